/// Tally of elementary coefficient-by-coefficient products.
///
/// Each algorithm bumps the counter once per product it actually evaluates;
/// shifts, additions and subtractions are free.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MulCounter {
    count: u64,
}

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn tick(&mut self) {
        self.count += 1;
    }

    #[inline]
    pub fn add(&mut self, n: u64) {
        self.count += n;
    }

    pub fn get(&self) -> u64 {
        self.count
    }

    /// Folds a counter used by an independent sub-computation back into this one.
    pub fn merge(&mut self, other: MulCounter) {
        self.count += other.count;
    }
}
