use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{betti_symmetric, is_cohen_macaulay, is_frobenius, is_gorenstein, Witness};
use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::exactalg::{
    Field, FieldMode, MonomialOrder, Polynomial, Rational, Zp, DEFAULT_PRIME, SECOND_PRIME,
};
use crate::groebner::{
    buchberger_in, hilbert_numerator_auto, krull_dim, HilbertNumerator, IdealText,
};
use crate::koszul::{HomologyBasis, KoszulOptions};
use crate::rootsys::{build_root_system, format_weight};

/// Per-run configuration shared by every command.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// `None` uses the entry's default field (Q for user ideals).
    pub field: Option<FieldMode>,
    pub q_max: Option<usize>,
    pub max_seconds: Option<u64>,
    pub max_nonzeros: Option<usize>,
    /// Fill `runtime_ms`; off by default so reports are reproducible.
    pub timings: bool,
}

#[derive(Clone, Debug)]
pub enum Input {
    Entry(CatalogEntry),
    Ideal { label: String, ideal: IdealText },
}

impl Input {
    fn label(&self) -> &str {
        match self {
            Input::Entry(e) => &e.id,
            Input::Ideal { label, .. } => label,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcanonicalReport {
    pub applies: bool,
    pub holds: bool,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    /// `classical` or `root data`.
    pub source: Option<String>,
    pub kappa: Option<String>,
    /// Verdict of the root-theoretic test, when root data is present.
    pub root_holds: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub applies: bool,
    /// `None` when the statement does not apply.
    pub holds: Option<bool>,
}

impl TheoremCheck {
    fn skipped() -> Self {
        TheoremCheck {
            applies: false,
            holds: None,
        }
    }

    fn checked(holds: bool) -> Self {
        TheoremCheck {
            applies: true,
            holds: Some(holds),
        }
    }

    pub fn failed(&self) -> bool {
        self.holds == Some(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorems {
    pub avramov_golod: TheoremCheck,
    pub theorem1: TheoremCheck,
    pub theorem2: TheoremCheck,
}

/// Agreement of a rational run with the prime-field rerun.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub field_mode: String,
    pub betti_agree: bool,
    pub avramov_golod: bool,
    /// The default prime disagreed with Q but the second prime agreed.
    pub unlucky_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub example: String,
    pub field_mode: String,
    pub n: usize,
    pub dim: usize,
    pub codim: usize,
    pub pd: usize,
    #[serde(rename = "type")]
    pub cm_type: usize,
    pub betti: Vec<[usize; 3]>,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub frobenius: bool,
    pub subcanonical: SubcanonicalReport,
    pub theorems: Theorems,
    pub runtime_ms: Option<u64>,
    pub regularity: usize,
    pub socle_degree: usize,
    pub q_max: usize,
    pub hilbert_numerator: Vec<i64>,
    /// Gorenstein entries only.
    pub betti_symmetric: Option<bool>,
    pub palindromic: Option<bool>,
    pub witnesses: Vec<String>,
    pub prime_check: Option<PrimeCheck>,
    pub notes: Vec<String>,
}

impl Report {
    /// Human-readable list of every failed assertion.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let t = &self.theorems;
        if t.avramov_golod.failed() {
            out.push(format!(
                "Avramov-Golod: gorenstein={} but frobenius={}",
                self.gorenstein, self.frobenius
            ));
        }
        if t.theorem1.failed() {
            out.push("theorem 1: subcanonical entry is not Gorenstein and Frobenius".into());
        }
        if t.theorem2.failed() {
            out.push(
                "theorem 2: root-theoretic, classical and Gorenstein verdicts disagree".into(),
            );
        }
        if self.betti_symmetric == Some(false) {
            out.push("Gorenstein entry has an asymmetric Betti table".into());
        }
        if self.palindromic == Some(false) {
            out.push("Gorenstein entry has a non-palindromic Hilbert numerator".into());
        }
        if let Some(pc) = &self.prime_check {
            if !pc.betti_agree {
                out.push(format!("Betti numbers over Q and {} differ", pc.field_mode));
            }
            if !pc.avramov_golod {
                out.push(format!("Avramov-Golod fails over {}", pc.field_mode));
            }
        }
        out
    }

    pub fn failed(&self) -> bool {
        !self.failures().is_empty()
    }
}

/// Everything computed for one ring.
#[derive(Debug)]
pub struct Analysis<F: Field> {
    pub numerator: HilbertNumerator,
    pub dim: usize,
    pub homology: HomologyBasis<F>,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub frobenius: bool,
    pub witnesses: Vec<Witness>,
}

/// Gröbner basis, Hilbert numerator, Koszul homology and verdicts for the
/// ideal generated by `generators` (integer coefficients) over `mode`.
pub fn compute_analysis<F: Field>(
    generators: &[Polynomial<Rational>],
    n: usize,
    mode: FieldMode,
    options: &RunOptions,
) -> Result<Analysis<F>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "ring needs at least one variable".into(),
        ));
    }
    let deadline = options
        .max_seconds
        .map(|s| Instant::now() + Duration::from_secs(s));
    let gens: Vec<Polynomial<F>> = generators
        .iter()
        .map(|g| g.convert::<F>(mode))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    if gens
        .iter()
        .any(|g| g.terms().iter().any(|(m, _)| m.is_one()))
    {
        return Err(Error::IllPosed(
            "ideal contains a nonzero constant, so S/I = 0".into(),
        ));
    }
    let gb = buchberger_in(&gens, &MonomialOrder::grevlex(n), n, mode)?;
    let (numerator, _) = hilbert_numerator_auto(&gb)?;
    let dim = krull_dim(&numerator, n)?;
    let homology = HomologyBasis::compute(
        gb,
        Some(&numerator),
        &KoszulOptions {
            q_max: options.q_max,
            deadline,
            max_nonzeros: options.max_nonzeros,
            check_dd: true,
        },
    )?;
    let bt = homology.betti();
    let cohen_macaulay = is_cohen_macaulay(bt, dim, n)?;
    let (gorenstein, mut witnesses) = is_gorenstein(bt, dim, n)?;
    let (frobenius, fw) = is_frobenius(&homology)?;
    for w in fw {
        if !witnesses.contains(&w) {
            witnesses.push(w);
        }
    }
    Ok(Analysis {
        numerator,
        dim,
        homology,
        cohen_macaulay,
        gorenstein,
        frobenius,
        witnesses,
    })
}

fn analyze_core<F: Field>(
    label: &str,
    generators: &[Polynomial<Rational>],
    n: usize,
    mode: FieldMode,
    options: &RunOptions,
) -> Result<Report> {
    let start = Instant::now();
    let a = compute_analysis::<F>(generators, n, mode, options)?;
    let bt = a.homology.betti();
    let symmetric = a.gorenstein.then(|| betti_symmetric(bt));
    let palindromic = a.gorenstein.then(|| a.numerator.is_palindromic());
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(Report {
        example: label.to_string(),
        field_mode: mode.to_string(),
        n,
        dim: a.dim,
        codim: n - a.dim,
        pd: bt.pd(),
        cm_type: bt.cm_type(),
        betti: bt.triples(),
        cohen_macaulay: a.cohen_macaulay,
        gorenstein: a.gorenstein,
        frobenius: a.frobenius,
        subcanonical: SubcanonicalReport {
            applies: false,
            holds: false,
            n: None,
            source: None,
            kappa: None,
            root_holds: None,
        },
        theorems: Theorems {
            avramov_golod: TheoremCheck::checked(a.gorenstein == a.frobenius),
            theorem1: TheoremCheck::skipped(),
            theorem2: TheoremCheck::skipped(),
        },
        runtime_ms: options.timings.then_some(elapsed),
        regularity: bt.regularity(),
        socle_degree: bt.socle_degree(),
        q_max: a.homology.q_max(),
        hilbert_numerator: a.numerator.coefficients().to_vec(),
        betti_symmetric: symmetric,
        palindromic,
        witnesses: a.witnesses.iter().map(|w| w.to_string()).collect(),
        prime_check: None,
        notes: Vec::new(),
    })
}

fn dispatch(
    label: &str,
    generators: &[Polynomial<Rational>],
    n: usize,
    mode: FieldMode,
    options: &RunOptions,
) -> Result<Report> {
    match mode {
        FieldMode::Rational => analyze_core::<Rational>(label, generators, n, mode, options),
        FieldMode::Prime(_) => analyze_core::<Zp>(label, generators, n, mode, options),
    }
}

/// Full report for a catalog entry, including the subcanonicity data and
/// the theorem checks it enables.
pub fn analyze_entry(entry: &CatalogEntry, options: &RunOptions) -> Result<Report> {
    let mode = options.field.unwrap_or(entry.default_field);
    let mut r = dispatch(&entry.id, &entry.generators, entry.nvars, mode, options)?;
    let classical = entry.classical;
    let root = match &entry.root_data {
        Some((t, lambda)) => Some(build_root_system(t)?.subcanonicity_test(lambda)?),
        None => None,
    };
    let sub = &mut r.subcanonical;
    if classical.applies {
        sub.applies = true;
        sub.holds = classical.holds;
        sub.n = classical.n;
        sub.source = Some("classical".into());
    } else if let Some(v) = &root {
        sub.applies = true;
        sub.holds = v.holds();
        sub.n = v.n;
        sub.source = Some("root data".into());
    }
    if let Some(v) = &root {
        sub.kappa = Some(format_weight(&v.kappa));
        sub.root_holds = Some(v.holds());
    }
    if sub.holds {
        r.theorems.theorem1 = TheoremCheck::checked(r.gorenstein && r.frobenius);
    }
    if let (Some(v), true) = (&root, classical.applies) {
        r.theorems.theorem2 = TheoremCheck::checked(
            v.holds() == classical.holds && classical.holds == r.gorenstein && v.n == classical.n,
        );
    }
    if let Some(note) = &entry.note {
        r.notes.push(note.clone());
    }
    Ok(r)
}

pub fn analyze_ideal(label: &str, ideal: &IdealText, options: &RunOptions) -> Result<Report> {
    let mode = options.field.unwrap_or(FieldMode::Rational);
    let mut r = dispatch(label, &ideal.generators, ideal.nvars, mode, options)?;
    r.notes.push(
        "verdicts describe S/I as given; whether I is the full ideal of a projectively normal embedding is not checked"
            .into(),
    );
    Ok(r)
}

pub fn analyze(input: &Input, options: &RunOptions) -> Result<Report> {
    match input {
        Input::Entry(e) => analyze_entry(e, options),
        Input::Ideal { label, ideal } => analyze_ideal(label, ideal, options),
    }
    .map_err(|e| match e {
        Error::Resource(msg) => Error::Resource(format!("{}: {msg}", input.label())),
        other => other,
    })
}

/// Reruns `entry` over the default prime and compares with the rational
/// report; on a mismatch the second prime decides whether the first was
/// merely unlucky.
pub fn cross_check_prime(
    entry: &CatalogEntry,
    rational: &Report,
    options: &RunOptions,
) -> Result<PrimeCheck> {
    let run = |p: u32| {
        let opts = RunOptions {
            field: Some(FieldMode::Prime(p)),
            ..options.clone()
        };
        analyze_entry(entry, &opts)
    };
    let first = run(DEFAULT_PRIME)?;
    if first.betti == rational.betti {
        return Ok(PrimeCheck {
            field_mode: first.field_mode,
            betti_agree: true,
            avramov_golod: first.gorenstein == first.frobenius,
            unlucky_prime: false,
        });
    }
    let second = run(SECOND_PRIME)?;
    let agree = second.betti == rational.betti;
    Ok(PrimeCheck {
        field_mode: second.field_mode,
        betti_agree: agree,
        avramov_golod: second.gorenstein == second.frobenius,
        unlucky_prime: agree,
    })
}

/// Report for one entry as used by `verify-theorems`: rational entries are
/// also cross-checked over a prime field.
pub fn verify_entry(entry: &CatalogEntry, options: &RunOptions) -> Result<Report> {
    let mut r = analyze_entry(entry, options)?;
    if r.field_mode == FieldMode::Rational.to_string() {
        r.prime_check = Some(cross_check_prime(entry, &r, options)?);
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryError {
    pub example: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

/// Result of `verify-theorems`, reports sorted by example id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRun {
    pub reports: Vec<Report>,
    pub errors: Vec<EntryError>,
    pub summary: Summary,
}

impl VerifyRun {
    fn assemble(results: Vec<(String, Result<Report>)>) -> Self {
        let mut reports = Vec::new();
        let mut errors = Vec::new();
        for (id, r) in results {
            match r {
                Ok(r) => reports.push(r),
                Err(e) => errors.push(EntryError {
                    example: id,
                    error: e.to_string(),
                }),
            }
        }
        reports.sort_by(|a, b| a.example.cmp(&b.example));
        errors.sort_by(|a, b| a.example.cmp(&b.example));
        let failed = reports.iter().filter(|r| r.failed()).count();
        VerifyRun {
            summary: Summary {
                entries: reports.len() + errors.len(),
                passed: reports.len() - failed,
                failed,
                errors: errors.len(),
            },
            reports,
            errors,
        }
    }

    pub fn single(id: &str, result: Result<Report>) -> Self {
        VerifyRun::assemble(vec![(id.to_string(), result)])
    }

    /// 1 if any assertion failed, else 2 if any entry could not be
    /// computed, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            1
        } else if self.summary.errors > 0 {
            2
        } else {
            0
        }
    }
}

/// Runs the standard catalog in parallel.
pub fn verify_all(options: &RunOptions) -> VerifyRun {
    let results: Vec<(String, Result<Report>)> = catalog::standard()
        .par_iter()
        .map(|e| (e.id.clone(), verify_entry(e, options)))
        .collect();
    VerifyRun::assemble(results)
}
