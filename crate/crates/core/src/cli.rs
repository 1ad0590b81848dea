//! Command-line surface.
//!
//! [`run`] parses arguments, writes to the given streams and returns the
//! process exit code: 0 on success, 1 on usage errors, 2 when a computation
//! fails.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeffs::{
    check_congruence, format_rational, mod_d9_relation, parse_rational, Congruence, ParamPoly,
};
use crate::conditions::{condition_multisets, determining_indices, label, Scheme};
use crate::lyndon::{bracketing, generate_lyndon, GradedAlphabet};
use crate::solver::{
    build_system, solve_newton, verify_order_approx, verify_order_exact, verify_order_numeric,
    DeterminingSystem, Equation, Ladder, Ties, DEFAULT_STEPS,
};
use crate::witt::{corollary_identity, s_min, witt_multi, Identity};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "splitgen", version, about = "Determining equations for exponential product formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal parameter count and per-content Witt dimensions.
    Count {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        order: usize,
    },
    /// Minimal list of determining index sequences.
    Conditions {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        order: usize,
    },
    /// Determining polynomials; `--json PATH` also writes the exact export
    /// (`-` for stdout).
    Equations {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        stages: usize,
        #[arg(long)]
        ties: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Damped Newton solve of the determining system.
    Solve {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        stages: usize,
        /// Tie stages symmetrically, p_{r+1-j} = p_j.
        #[arg(long)]
        ties: bool,
        /// Seed for random starting points when `--initial` is absent.
        #[arg(long, env = "SPLITGEN_SEED", default_value_t = 0)]
        seed: u64,
        /// Comma-separated start values, one per stage or per free
        /// variable; complex values as `0.3+0.2i`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        initial: Option<Vec<String>>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Random restarts tried when no `--initial` is given.
        #[arg(long, default_value_t = 32)]
        attempts: usize,
        /// Write the lowered ladder as JSON.
        #[arg(long)]
        ladder_out: Option<PathBuf>,
    },
    /// Order check of a ladder file.
    Verify {
        #[arg(long)]
        ladder: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, conflicts_with = "numeric")]
        exact: bool,
        #[arg(long)]
        numeric: bool,
        #[arg(long, env = "SPLITGEN_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        trials: usize,
        /// Coefficient tolerance for ladders with float exponents.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Lyndon words with their standard bracketing.
    Lyndon {
        /// Symbols with optional grades, e.g. `A,B` or `R1:1,R3:3`.
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        max_grade: u32,
    },
    /// Dimension identities and coset congruences.
    Identities {
        /// Stage counts used for the congruence checks.
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        stages: Vec<usize>,
    },
}

/// Exact, serializable form of a [`DeterminingSystem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationExport {
    pub scheme: String,
    pub order: usize,
    pub stages: usize,
    pub variables: Vec<String>,
    /// Free-variable index of each stage.
    pub ties: Vec<usize>,
    pub equations: Vec<ExportedEquation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedEquation {
    pub label: Vec<u32>,
    pub monomials: Vec<ExportedMonomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedMonomial {
    pub exponents: Vec<u32>,
    /// `"n/d"` or `"n"`.
    pub coefficient: String,
}

impl EquationExport {
    pub fn from_system(sys: &DeterminingSystem) -> Self {
        EquationExport {
            scheme: sys.scheme.name(),
            order: sys.order,
            stages: sys.stages,
            variables: (1..=sys.stages).map(|j| format!("p{j}")).collect(),
            ties: sys.ties.map().to_vec(),
            equations: sys
                .equations
                .iter()
                .map(|eq| ExportedEquation {
                    label: eq.label.clone(),
                    monomials: eq
                        .poly
                        .terms()
                        .map(|(e, c)| ExportedMonomial {
                            exponents: e.clone(),
                            coefficient: format_rational(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<DeterminingSystem> {
        let scheme: Scheme = self.scheme.parse()?;
        if self.ties.len() != self.stages {
            return Err(Error::DimensionMismatch {
                expected: self.stages,
                got: self.ties.len(),
            });
        }
        let ties = Ties::groups(&self.ties)?;
        let equations = self
            .equations
            .iter()
            .map(|eq| {
                let terms = eq
                    .monomials
                    .iter()
                    .map(|m| Ok((m.exponents.clone(), parse_rational(&m.coefficient)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Equation {
                    label: eq.label.clone(),
                    poly: ParamPoly::from_terms(self.stages, terms)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DeterminingSystem {
            scheme,
            order: self.order,
            stages: self.stages,
            equations,
            ties,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("export serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("equation JSON: {e}")))
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::NoConvergence { last, .. } | Error::SingularJacobian { last, .. } = &e {
                let _ = writeln!(err, "last iterate: {}", format_values(last));
            }
            2
        }
    }
}

fn execute(cmd: Command) -> Result<String> {
    match cmd {
        Command::Count { scheme, order } => count(scheme, order),
        Command::Conditions { scheme, order } => conditions(scheme, order),
        Command::Equations {
            scheme,
            order,
            stages,
            ties,
            json,
        } => equations(scheme, order, stages, ties, json),
        Command::Solve {
            scheme,
            order,
            stages,
            ties,
            seed,
            initial,
            tol,
            max_iter,
            attempts,
            ladder_out,
        } => {
            let opts = SolveOpts {
                seed,
                initial,
                tol,
                max_iter,
                attempts,
                ladder_out,
            };
            solve(scheme, order, stages, ties, &opts)
        }
        Command::Verify {
            ladder,
            order,
            exact,
            numeric,
            seed,
            trials,
            tol,
        } => verify(&ladder, order, exact, numeric, seed, trials, tol),
        Command::Lyndon {
            alphabet,
            max_grade,
        } => lyndon(&alphabet, max_grade),
        Command::Identities { stages } => identities(&stages),
    }
}

fn count(scheme: Scheme, order: usize) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "s_min {}", s_min(scheme, order)?).unwrap();
    for ms in condition_multisets(scheme, order)? {
        let idx: Vec<String> = ms
            .content()
            .iter()
            .flat_map(|(g, n)| std::iter::repeat_n(g.to_string(), *n))
            .collect();
        let mult = ms.multiplicities();
        let mult_s: Vec<String> = mult.iter().map(u64::to_string).collect();
        writeln!(
            s,
            "{{{}}} M({}) = {}",
            idx.join(","),
            mult_s.join(","),
            witt_multi(&mult)
        )
        .unwrap();
    }
    Ok(s)
}

fn conditions(scheme: Scheme, order: usize) -> Result<String> {
    let mut s = String::new();
    for idx in determining_indices(scheme, order)? {
        writeln!(s, "{}", label(&idx)).unwrap();
    }
    Ok(s)
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn equations(scheme: Scheme, order: usize, stages: usize, ties: bool, json: Option<PathBuf>) -> Result<String> {
    let sys = build_system(scheme, order, stages, ties)?;
    let export = EquationExport::from_system(&sys);
    if json.as_deref().is_some_and(|p| p.as_os_str() == "-") {
        return Ok(export.to_json() + "\n");
    }
    let mut s = String::new();
    writeln!(s, "{} = 1", ParamPoly::normalization(stages).to_string().trim_end_matches(" - 1")).unwrap();
    for eq in &sys.equations {
        writeln!(s, "{}: {} = 0", label(&eq.label), eq.poly).unwrap();
    }
    if let Some(path) = json {
        write_file(&path, &(export.to_json() + "\n"))?;
    }
    Ok(s)
}

struct SolveOpts {
    seed: u64,
    initial: Option<Vec<String>>,
    tol: f64,
    max_iter: usize,
    attempts: usize,
    ladder_out: Option<PathBuf>,
}

fn parse_value(s: &str) -> Result<Complex64> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|e| Error::Parse(format!("bad start value {s:?}: {e}")))
}

fn format_complex(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.15}", z.re)
    } else {
        format!("{:.15}{:+.15}i", z.re, z.im)
    }
}

fn format_values(v: &[Complex64]) -> String {
    v.iter().map(format_complex).collect::<Vec<_>>().join(", ")
}

fn solve(scheme: Scheme, order: usize, stages: usize, ties: bool, opts: &SolveOpts) -> Result<String> {
    let sys = build_system(scheme, order, stages, ties)?;
    let sol = match &opts.initial {
        Some(vals) => {
            let start = vals.iter().map(|v| parse_value(v)).collect::<Result<Vec<_>>>()?;
            solve_newton(&sys, &start, opts.tol, opts.max_iter)?
        }
        None => {
            let complex = scheme == Scheme::NonsymmetricComplex;
            let k = sys.free_variables();
            let mut last = None;
            let mut found = None;
            for attempt in 0..opts.attempts.max(1) {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(attempt as u64);
                let start: Vec<Complex64> = (0..k)
                    .map(|_| {
                        let re = rng.random_range(-1.5..1.5);
                        let im = if complex { rng.random_range(-0.5..0.5) } else { 0.0 };
                        Complex64::new(re, im)
                    })
                    .collect();
                match solve_newton(&sys, &start, opts.tol, opts.max_iter) {
                    Ok(s) => {
                        found = Some(s);
                        break;
                    }
                    Err(e @ (Error::NoConvergence { .. } | Error::SingularJacobian { .. })) => {
                        last = Some(e)
                    }
                    Err(e) => return Err(e),
                }
            }
            match found {
                Some(s) => s,
                None => return Err(last.expect("at least one attempt")),
            }
        }
    };
    let residuals = sys.residual(&sol.values)?;
    let mut s = String::new();
    writeln!(s, "scheme {} order {} stages {}", scheme.name(), order, stages).unwrap();
    writeln!(s, "iterations {}", sol.iterations).unwrap();
    for (j, v) in sol.values.iter().enumerate() {
        writeln!(s, "p{} = {}", j + 1, format_complex(v)).unwrap();
    }
    writeln!(s, "residual sum(p) - 1 = {:.3e}", residuals[0].norm()).unwrap();
    for (eq, r) in sys.equations.iter().zip(&residuals[1..]) {
        writeln!(s, "residual {} = {:.3e}", label(&eq.label), r.norm()).unwrap();
    }
    match Ladder::from_scheme(scheme, &Ladder::coefs_from_complex(&sol.values)) {
        Ok(ladder) => {
            writeln!(s, "ladder {ladder}").unwrap();
            if let Some(path) = &opts.ladder_out {
                write_file(path, &(ladder.to_json() + "\n"))?;
            }
        }
        Err(e) if opts.ladder_out.is_some() => return Err(e),
        Err(_) => {}
    }
    Ok(s)
}

fn verify(path: &PathBuf, order: usize, exact: bool, numeric: bool, seed: u64, trials: usize, tol: f64) -> Result<String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let ladder = Ladder::from_json(&text)?;
    let mut s = String::new();
    if numeric {
        let fit = verify_order_numeric(&ladder, trials, seed, &DEFAULT_STEPS)?;
        let ok = fit.slope >= order as f64 + 0.6;
        writeln!(s, "{}", if ok { "ok" } else { "not ok" }).unwrap();
        writeln!(s, "slope {:.4} (order {} expects about {})", fit.slope, order, order + 1).unwrap();
        for (t, sl) in fit.trial_slopes.iter().enumerate() {
            writeln!(s, "trial {t} slope {sl:.4}").unwrap();
        }
        return Ok(s);
    }
    let (ok, first, norms) = if ladder.is_exact() {
        let v = verify_order_exact(&ladder, order)?;
        (v.ok, v.first_defect_grade, v.defect_norms)
    } else if exact {
        return Err(Error::InvalidArgument(
            "--exact needs rational exponents; float ladders are checked with --tol".into(),
        ));
    } else {
        let v = verify_order_approx(&ladder, order, tol)?;
        (v.ok, v.first_defect_grade, v.defect_norms)
    };
    writeln!(s, "{}", if ok { "ok" } else { "not ok" }).unwrap();
    match first {
        Some(g) => writeln!(s, "first defect at grade {g}").unwrap(),
        None => writeln!(s, "no defect through grade {}", order + 1).unwrap(),
    }
    for (g, n) in norms.iter().enumerate().skip(1) {
        writeln!(s, "grade {g} defect {n:.3e}").unwrap();
    }
    Ok(s)
}

fn lyndon(alphabet: &str, max_grade: u32) -> Result<String> {
    let alpha = GradedAlphabet::parse(alphabet)?;
    let mut by_grade: BTreeMap<u32, Vec<String>> = BTreeMap::new();
    for w in generate_lyndon(&alpha, max_grade) {
        let g = alpha.grade(w.word());
        by_grade
            .entry(g)
            .or_default()
            .push(format!("{} {}", alpha.spell(w.word()), bracketing(&w).render(&alpha)));
    }
    let mut s = String::new();
    for (g, words) in by_grade {
        writeln!(s, "grade {g}: {} words", words.len()).unwrap();
        for w in words {
            writeln!(s, "  {w}").unwrap();
        }
    }
    Ok(s)
}

fn identities(stages: &[usize]) -> Result<String> {
    let mut s = String::new();
    let mut passed = 0;
    let mut total = 0;
    let mut report = |s: &mut String, name: String, ok: bool| {
        total += 1;
        passed += ok as usize;
        writeln!(s, "{} {name}", if ok { "PASS" } else { "FAIL" }).unwrap();
    };

    let mut dims = Vec::new();
    for m in 3..=12 {
        dims.push(Identity::Stride { k: 2, m });
        dims.push(Identity::Stride { k: 3, m: m + 1 });
        dims.push(Identity::AllGrades { m });
        dims.push(Identity::OddGrades { m });
    }
    for p in [3, 5, 7, 11, 13] {
        dims.push(Identity::PrimeWeights { weights: vec![1, 2], p });
        dims.push(Identity::PrimeWeights { weights: vec![1, 3, 5], p });
        dims.push(Identity::PrimeTwoGrades { p });
    }
    for id in dims {
        let (l, r) = corollary_identity(&id)?;
        report(&mut s, format!("{id:?}: {l} = {r}"), l == r);
    }

    for &r in stages {
        for t in [[1, 1, 1], [1, 1, 3], [1, 3, 1], [3, 1, 1]] {
            let c = check_congruence(&Congruence::Aaa(t), r)?;
            report(&mut s, format!("Aaa{t:?} r={r}"), c.member);
            report(&mut s, format!("Aaa{t:?} a/b mirror r={r}"), c.mirror == Some(true));
            let c = check_congruence(&Congruence::ApB(t), r)?;
            report(&mut s, format!("ApB{t:?} r={r}"), c.member);
        }
        let t5 = [1, 1, 1, 1, 1];
        for (name, c) in [
            ("Aaaaa", Congruence::Aaaaa(t5)),
            ("AaaaP", Congruence::AaaaP(t5)),
            ("AaapB", Congruence::AaapB(t5)),
            ("AapBb", Congruence::AapBb(t5)),
        ] {
            let o = check_congruence(&c, r)?;
            report(&mut s, format!("{name}{t5:?} r={r}"), o.member);
            if let Some(m) = o.mirror {
                report(&mut s, format!("{name}{t5:?} a/b mirror r={r}"), m);
            }
        }
        report(&mut s, format!("relation mod D9 r={r}"), mod_d9_relation(r)?);
    }
    writeln!(s, "{passed}/{total} passed").unwrap();
    Ok(s)
}
