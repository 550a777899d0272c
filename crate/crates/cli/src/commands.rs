use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use karaflat_core::coeffwise::coeff_eval;
use karaflat_core::partial::contribution_set;
use karaflat_core::poly::{parse_coefficients, schoolbook_mul, serialize_poly};
use karaflat_core::seqs::{a268289_count, sierpinski_t, sigma};
use karaflat_core::series::{convolve_series_flat, convolve_series_partial};
use karaflat_core::{Algorithm, BigInt, MulCounter, Polynomial, SeriesPrefix};
use rayon::prelude::*;

use crate::workload::random_pair;
use crate::{BenchArgs, CoeffArgs, Failure, MulArgs, RunConfig, SeqArgs, SeqName, SeriesArgs, SeriesForm, VerifyArgs};

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(sink: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Outcome {
    sink.write_fmt(text).map_err(|e| usage(format!("write failed: {e}")))
}

fn read_coefficients(path: &Path) -> Result<Vec<BigInt>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_coefficients(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn algo_list(algos: &[Algorithm]) -> String {
    algos.iter().map(|a| a.name()).collect::<Vec<_>>().join(",")
}

pub fn mul(args: &MulArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let a = Polynomial::new(read_coefficients(&args.a)?);
    let b = Polynomial::new(read_coefficients(&args.b)?);
    let mut counter = MulCounter::new();
    let product = args
        .algo
        .multiply(&a, &b, &mut counter)
        .map_err(|e| usage(e.to_string()))?;
    let text = serialize_poly(&product);
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None if text.is_empty() => {}
        None => emit(out, format_args!("{text}\n"))?,
    }
    emit(err, format_args!("{}: {} multiplications\n", args.algo, counter.get()))
}

fn check_config(config: &RunConfig) -> Outcome {
    if config.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if config.sizes.is_empty() {
        return Err(usage("--sizes must name at least one size"));
    }
    if let Some(n) = config.sizes.iter().find(|n| !n.is_power_of_two()) {
        return Err(usage(format!("size {n} is not a power of two")));
    }
    if config.coeff_bound == 0 {
        return Err(usage("--coeff-bound must be at least 1"));
    }
    Ok(())
}

/// Product count each algorithm must hit on an `n`-term pair with nonzero leading coefficients.
fn expected_count(algo: Algorithm, n: usize) -> u64 {
    match algo {
        Algorithm::Naive => (n * n) as u64,
        _ => 3u64.pow(n.ilog2()),
    }
}

enum Problem {
    Wrong,
    Count { got: u64, want: u64 },
    Failed(String),
}

struct Finding {
    algo: Algorithm,
    problem: Problem,
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let config = &args.config;
    check_config(config)?;
    let algos = if args.algo.is_empty() {
        Algorithm::KARATSUBA.to_vec()
    } else {
        args.algo.clone()
    };
    emit(
        out,
        format_args!(
            "# verify seed={} coeff-bound={} algos={}\n",
            config.seed,
            config.coeff_bound,
            algo_list(&algos)
        ),
    )?;

    let cells: Vec<(usize, usize)> = config
        .sizes
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let findings: Vec<Option<Finding>> = cells
        .par_iter()
        .enumerate()
        .map(|(index, &(n, trial))| {
            let (a, b) = random_pair(config.seed, n, trial, config.coeff_bound);
            let want = schoolbook_mul(&a, &b, &mut MulCounter::new());
            algos.iter().enumerate().find_map(|(ai, &algo)| {
                let mut counter = MulCounter::new();
                let problem = match algo.multiply(&a, &b, &mut counter) {
                    Err(e) => Some(Problem::Failed(e.to_string())),
                    Ok(mut got) => {
                        if args.inject_fault && index == 0 && ai == 0 {
                            got += &Polynomial::one();
                        }
                        if got != want {
                            Some(Problem::Wrong)
                        } else if counter.get() != expected_count(algo, n) {
                            Some(Problem::Count {
                                got: counter.get(),
                                want: expected_count(algo, n),
                            })
                        } else {
                            None
                        }
                    }
                };
                problem.map(|problem| Finding { algo, problem })
            })
        })
        .collect();

    for (&(n, trial), finding) in cells.iter().zip(&findings) {
        let Some(Finding { algo, problem }) = finding else {
            continue;
        };
        let what = match problem {
            Problem::Wrong => "product differs from schoolbook".to_string(),
            Problem::Count { got, want } => format!("{got} multiplications, expected {want}"),
            Problem::Failed(msg) => msg.clone(),
        };
        emit(
            err,
            format_args!(
                "MISMATCH algo={algo} n={n} trial={trial} seed={}: {what}\n\
                 reproduce: karaflat verify --algo {algo} --sizes {n} --trials {} --seed {} --coeff-bound {}\n",
                config.seed,
                trial + 1,
                config.seed,
                config.coeff_bound
            ),
        )?;
        return Err(Failure::Mismatch);
    }
    for &n in &config.sizes {
        emit(out, format_args!("n={n}: {} trials ok\n", config.trials))?;
    }
    emit(out, format_args!("all {} pairs match\n", cells.len()))
}

pub fn bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let config = &args.config;
    check_config(config)?;
    let algos = if args.algo.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        args.algo.clone()
    };
    emit(
        err,
        format_args!(
            "# bench seed={} coeff-bound={} algos={}\n",
            config.seed,
            config.coeff_bound,
            algo_list(&algos)
        ),
    )?;
    let mut csv = String::from("algo,n,trial,muls,nanos\n");
    for &algo in &algos {
        for &n in &config.sizes {
            for trial in 0..config.trials {
                let (a, b) = random_pair(config.seed, n, trial, config.coeff_bound);
                let mut counter = MulCounter::new();
                let start = Instant::now();
                let product = algo.multiply(&a, &b, &mut counter);
                let nanos = start.elapsed().as_nanos();
                product.map_err(|e| usage(format!("{algo} at n={n}: {e}")))?;
                csv.push_str(&format!("{algo},{n},{trial},{},{nanos}\n", counter.get()));
            }
        }
    }
    match &args.out {
        Some(path) => write_file(path, &csv),
        None => emit(out, format_args!("{csv}")),
    }
}

fn read_prefix(path: &Path, needed: usize, what: &str) -> Result<SeriesPrefix, Failure> {
    let coeffs = read_coefficients(path)?;
    if coeffs.len() < needed {
        return Err(usage(format!(
            "{}: {what} needs {needed} coefficients, file has {}",
            path.display(),
            coeffs.len()
        )));
    }
    Ok(SeriesPrefix::new(coeffs))
}

pub fn coeff(args: &CoeffArgs, out: &mut dyn Write) -> Outcome {
    let what = format!("--m {}", args.m);
    let g = read_prefix(&args.a, args.m + 1, &what)?;
    let h = read_prefix(&args.b, args.m + 1, &what)?;
    let eval = coeff_eval(&g, &h, args.m, args.form.into()).map_err(|e| usage(e.to_string()))?;
    emit(out, format_args!("{}\n", eval.value))
}

fn required(value: Option<u64>, flag: &str, name: &str) -> Result<u64, Failure> {
    value.ok_or_else(|| usage(format!("--name {name} needs {flag}")))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn seq(args: &SeqArgs, out: &mut dyn Write) -> Outcome {
    let line = match args.name {
        SeqName::A268289 => join((0..required(args.count, "--count", "A268289")?).map(a268289_count)),
        SeqName::A106400 => join((0..required(args.count, "--count", "A106400")?).map(|k| sigma(k).as_i32())),
        SeqName::A047999Row => {
            let n = required(args.row, "--row", "A047999-row")?;
            join((0..=n).map(|k| sierpinski_t(n, k)))
        }
        SeqName::Sd => join(contribution_set(required(args.d, "--d", "Sd")?).members()),
    };
    emit(out, format_args!("{line}\n"))
}

pub fn series(args: &SeriesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let what = format!("--order {}", args.order);
    let f = read_prefix(&args.a, args.order, &what)?;
    let g = read_prefix(&args.b, args.order, &what)?;
    let mut counter = MulCounter::new();
    let result = match args.form {
        SeriesForm::Partial => convolve_series_partial(&f, &g, args.order, &mut counter),
        SeriesForm::Flat => convolve_series_flat(&f, &g, args.order, &mut counter),
    }
    .map_err(|e| usage(e.to_string()))?;
    for c in result.coeffs() {
        emit(out, format_args!("{c}\n"))?;
    }
    let form = match args.form {
        SeriesForm::Partial => "partial",
        SeriesForm::Flat => "flat",
    };
    emit(err, format_args!("series {form}: {} multiplications\n", counter.get()))
}
