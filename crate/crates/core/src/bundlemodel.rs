//! Level data for the family `G_n`, the parity classes of the total spaces
//! `Y_n`, verification reports and Jordan-violation certificates.
//!
//! Model: the torsion group at level `n` is the full `n`-torsion `Z_n ⊕ Z_n`
//! of the torus, so `N = n²` exactly and `K = Z_n`. Other choices of `K` with
//! `|K| = n` can be run through [`evaluate_base`].

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbElement, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::heis::ThetaGroup;
use crate::lattice::{self, DEFAULT_ORACLE_CAP};
use crate::symplectic;

/// `Z_k ⊕ Z_k`, the `k`-torsion points of the torus.
pub fn torsion_group(k: i64) -> Result<FiniteAbelianGroup> {
    if k <= 0 {
        return Err(Error::NonPositive {
            what: "torsion level",
            value: k,
        });
    }
    FiniteAbelianGroup::from_cyclic(&[k as u64, k as u64])
}

/// The inclusion `torsion_group(d) ⊆ torsion_group(k)` for `d | k`, which
/// multiplies coordinates by `k / d`.
#[derive(Debug, Clone)]
pub struct TorsionEmbedding {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    scale: u64,
}

impl TorsionEmbedding {
    pub fn new(d: i64, k: i64) -> Result<Self> {
        let source = torsion_group(d)?;
        let target = torsion_group(k)?;
        if k % d != 0 {
            return Err(Error::FactorDoesNotDivide {
                factor: d as u64,
                m: k as u64,
            });
        }
        Ok(TorsionEmbedding {
            source,
            target,
            scale: (k / d) as u64,
        })
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn apply(&self, x: &AbElement) -> Result<AbElement> {
        self.source.check_element(x)?;
        if self.source.is_trivial() {
            return Ok(self.target.zero());
        }
        Ok(AbElement(x.0.iter().map(|&c| c * self.scale).collect()))
    }
}

#[derive(Debug, Clone)]
pub struct LevelData {
    pub n: u64,
    /// `N = |H(ξ_n)| = n²`.
    pub torsion_order: u64,
    pub base: FiniteAbelianGroup,
    pub theta: ThetaGroup,
}

pub fn level_data(n: i64) -> Result<LevelData> {
    if n <= 0 {
        return Err(Error::NonPositive {
            what: "level",
            value: n,
        });
    }
    let n = n as u64;
    let base = FiniteAbelianGroup::cyclic(n)?;
    Ok(LevelData {
        n,
        torsion_order: n.checked_mul(n).ok_or(Error::Overflow)?,
        theta: ThetaGroup::new(base.clone())?,
        base,
    })
}

/// Diffeomorphism class of `Y_n`: parity 0 is `T² × S²`, parity 1 the
/// nontrivial orientable bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiffeoClass {
    pub parity: u8,
}

impl DiffeoClass {
    pub const TRIVIAL: DiffeoClass = DiffeoClass { parity: 0 };
    pub const TWISTED: DiffeoClass = DiffeoClass { parity: 1 };

    pub fn new(parity: u8) -> Result<Self> {
        if parity > 1 {
            return Err(Error::InvalidParity(parity));
        }
        Ok(DiffeoClass { parity })
    }

    pub fn manifold(&self) -> &'static str {
        match self.parity {
            0 => "T2 x S2",
            _ => "nontrivial orientable S2-bundle over T2",
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        n % 2 == u64::from(self.parity)
    }
}

pub fn diffeo_class(n: i64) -> Result<DiffeoClass> {
    if n < 0 {
        return Err(Error::NegativeChernNumber(n));
    }
    Ok(DiffeoClass {
        parity: (n % 2) as u8,
    })
}

/// Levels `1 ≤ n ≤ n_max` with `n` in class `m`, ascending.
pub fn family_for_class(m: DiffeoClass, n_max: i64) -> Result<Vec<LevelData>> {
    if n_max < 1 {
        return Err(Error::NonPositive {
            what: "n_max",
            value: n_max,
        });
    }
    (1..=n_max)
        .filter(|&n| m.contains(n as u64))
        .map(level_data)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Oracle,
    Structural,
    Both,
}

/// Which computation produced a reported index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Structural,
    Both,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Structural => "structural",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSettings {
    pub cap: u64,
    pub seed: u64,
    /// Samples for the associativity spot check of each tabulated group.
    pub spot_checks: usize,
    /// Test hook: tabulate without the pairing term, which breaks the theorem.
    pub inject_fault: bool,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            cap: DEFAULT_ORACLE_CAP,
            seed: 0,
            spot_checks: 1000,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub n: u64,
    pub group_order: u64,
    pub max_abelian_order: u64,
    pub min_abelian_index: u64,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Both routes' answers for one base group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub method: Method,
    pub oracle_index: Option<u64>,
    pub structural_index: u64,
}

impl Evidence {
    pub fn agrees(&self) -> bool {
        self.oracle_index.is_none_or(|o| o == self.structural_index)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub entry: ReportEntry,
    pub evidence: Evidence,
}

/// Computes the minimal abelian index of `Heis(base)` according to `mode`,
/// with `n = |base|`.
///
/// The oracle runs when `mode` asks for it and `|base|³` is within the cap;
/// otherwise the structural value is used and recorded as such.
pub fn evaluate_base(
    base: &FiniteAbelianGroup,
    mode: Mode,
    settings: &OracleSettings,
) -> Result<Evaluation> {
    let start = Instant::now();
    let n = base.order();
    let structural_index = symplectic::structural_min_abelian_index(base);
    let group_order = n
        .checked_mul(n)
        .and_then(|x| x.checked_mul(n))
        .ok_or(Error::Overflow)?;
    let oracle_max =
        if mode != Mode::Structural && group_order <= settings.cap.min(lattice::TABLE_CAP) {
            let theta = ThetaGroup::new(base.clone())?;
            let table = if settings.inject_fault {
                theta.concrete_without_cocycle(settings.cap)?
            } else {
                theta.concrete(settings.cap)?
            };
            table.spot_check(settings.spot_checks, settings.seed)?;
            Some(lattice::max_abelian_order(&table, settings.cap)?)
        } else {
            None
        };
    let (method, max_abelian_order) = match (mode, oracle_max) {
        (Mode::Oracle, Some(o)) => (Method::Oracle, o),
        (Mode::Both, Some(o)) => (Method::Both, o),
        _ => (
            Method::Structural,
            symplectic::structural_max_abelian_order(base)?,
        ),
    };
    let min_abelian_index = group_order / max_abelian_order;
    Ok(Evaluation {
        entry: ReportEntry {
            n,
            group_order,
            max_abelian_order,
            min_abelian_index,
            method,
            elapsed_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        },
        evidence: Evidence {
            method,
            oracle_index: oracle_max.map(|o| group_order / o),
            structural_index,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCertificate {
    pub c: u64,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub manifold_class: DiffeoClass,
    pub entries: Vec<ReportEntry>,
    pub threshold_certificates: Vec<ThresholdCertificate>,
}

impl VerificationReport {
    /// Assembles a report from entries in any order and derives threshold
    /// certificates for `c = 1..=10` and powers of ten, as far as the entries
    /// reach.
    pub fn assemble(manifold_class: DiffeoClass, mut entries: Vec<ReportEntry>) -> Self {
        entries.sort_by_key(|e| e.n);
        let top = entries
            .iter()
            .map(|e| e.min_abelian_index)
            .max()
            .unwrap_or(0);
        let mut thresholds: Vec<u64> = (1..=10).collect();
        let mut p = 100u64;
        while p < top {
            thresholds.push(p);
            p = p.saturating_mul(10);
        }
        let threshold_certificates = thresholds
            .into_iter()
            .filter_map(|c| {
                entries
                    .iter()
                    .find(|e| e.min_abelian_index > c)
                    .map(|e| ThresholdCertificate { c, n: e.n })
            })
            .collect();
        VerificationReport {
            manifold_class,
            entries,
            threshold_certificates,
        }
    }

    /// Every broken invariant, as a human-readable diagnostic.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in self.entries.windows(2) {
            if w[0].n >= w[1].n {
                out.push(format!("entries not strictly sorted at n = {}", w[1].n));
            }
        }
        for e in &self.entries {
            if !self.manifold_class.contains(e.n) {
                out.push(format!(
                    "n = {} does not belong to parity class {}",
                    e.n, self.manifold_class.parity
                ));
            }
            if e.min_abelian_index < e.n {
                out.push(format!(
                    "n = {}: abelian subgroup of index {} < n (order {} in group of order {})",
                    e.n, e.min_abelian_index, e.max_abelian_order, e.group_order
                ));
            }
        }
        out
    }
}

/// Outcome of a report run: the report plus any route disagreements.
#[derive(Debug, Clone)]
pub struct ReportRun {
    pub report: VerificationReport,
    pub disagreements: Vec<String>,
}

/// Evaluates every level of class `m` up to `n_max`, in parallel over levels.
pub fn verify_class(
    m: DiffeoClass,
    n_max: i64,
    mode: Mode,
    settings: &OracleSettings,
) -> Result<ReportRun> {
    let levels = family_for_class(m, n_max)?;
    let evaluations = levels
        .par_iter()
        .map(|lvl| evaluate_base(&lvl.base, mode, settings))
        .collect::<Result<Vec<_>>>()?;
    Ok(finish_run(m, evaluations))
}

/// A single-entry run on `Heis(base)`, filed under the class of `|base|`.
pub fn verify_base(
    base: &FiniteAbelianGroup,
    mode: Mode,
    settings: &OracleSettings,
) -> Result<ReportRun> {
    let m = diffeo_class(base.order() as i64)?;
    Ok(finish_run(m, vec![evaluate_base(base, mode, settings)?]))
}

fn finish_run(m: DiffeoClass, evaluations: Vec<Evaluation>) -> ReportRun {
    let disagreements = evaluations
        .iter()
        .filter(|ev| !ev.evidence.agrees())
        .map(|ev| {
            format!(
                "n = {}: oracle index {:?} disagrees with structural index {}",
                ev.entry.n, ev.evidence.oracle_index, ev.evidence.structural_index
            )
        })
        .collect();
    let entries = evaluations.into_iter().map(|ev| ev.entry).collect();
    ReportRun {
        report: VerificationReport::assemble(m, entries),
        disagreements,
    }
}

/// A finite group in the family refuting `c` as a Jordan constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JordanCertificate {
    pub manifold_class: DiffeoClass,
    pub c: u64,
    pub n: u64,
    pub group_order: u64,
    pub min_abelian_index: u64,
    pub evidence: Evidence,
}

/// Smallest level `n > c` in class `m`, with evidence that every abelian
/// subgroup of `G_n` has index at least `n`.
///
/// In [`Mode::Both`] the oracle and the structural value must agree.
pub fn jordan_certificate(
    m: DiffeoClass,
    c: i64,
    mode: Mode,
    settings: &OracleSettings,
) -> Result<JordanCertificate> {
    if c < 1 {
        return Err(Error::NonPositive {
            what: "Jordan constant",
            value: c,
        });
    }
    let c = c as u64;
    let n = if m.contains(c + 1) { c + 1 } else { c + 2 };
    let lvl = level_data(n as i64)?;
    let ev = evaluate_base(&lvl.base, mode, settings)?;
    if mode == Mode::Both && !ev.evidence.agrees() {
        return Err(Error::AxiomViolation(format!(
            "oracle index {:?} and structural index {} disagree at n = {n}",
            ev.evidence.oracle_index, ev.evidence.structural_index
        )));
    }
    Ok(JordanCertificate {
        manifold_class: m,
        c,
        n,
        group_order: ev.entry.group_order,
        min_abelian_index: ev.entry.min_abelian_index,
        evidence: ev.evidence,
    })
}
