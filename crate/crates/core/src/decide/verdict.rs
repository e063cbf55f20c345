use serde::{Deserialize, Serialize};

use crate::exactnum::{mult_dependence, FactorConfig, NumError};
use crate::ifscore::Ifs;

use super::fastpath::{corollary_fastpath, FastPathCondition};
use super::lattice::{substitutable, SearchOutcome};
use super::witness::SubstitutabilityWitness;
use super::{Budget, DecideError};

/// Outcome of the log-ratio test on `ρ_1, ρ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Necessary {
    Pass { p: u64, q: u64 },
    Fail,
}

/// `log ρ_1 / log ρ_n` must be rational.
pub fn check_necessary(ifs: &Ifs, cfg: &FactorConfig) -> Result<Necessary, NumError> {
    let n = ifs.n();
    Ok(
        match mult_dependence(ifs.spec.ratio(1), ifs.spec.ratio(n), cfg)? {
            Some((p, q)) => Necessary::Pass { p, q },
            None => Necessary::Fail,
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotEquivalentReason {
    /// `log ρ_1 / log ρ_n` is irrational.
    LogRatio,
    /// Four maps with `ρ_1 = ρ_4`, touching at 2, and `μ_2, μ_3` declared
    /// algebraically independent.
    DeclaredIndependence,
}

/// The four-map rule. `declared` is the caller's assertion that `μ_2` and
/// `μ_3` are algebraically independent; it is trusted, not checked.
pub fn branch4_rule(ifs: &Ifs, declared: bool) -> Result<Option<NotEquivalentReason>, DecideError> {
    let spec = &ifs.spec;
    if spec.n() != 4 {
        return Err(DecideError::Shape(format!("needs 4 maps, got {}", spec.n())));
    }
    if spec.ratio(1) != spec.ratio(4) {
        return Err(DecideError::Shape("needs ρ_1 = ρ_4".into()));
    }
    if ifs.ts.sigma_t.iter().copied().collect::<Vec<_>>() != [2] {
        return Err(DecideError::Shape("needs the touching letters to be {2}".into()));
    }
    Ok(declared.then_some(NotEquivalentReason::DeclaredIndependence))
}

/// How a touching letter fared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum LetterStatus {
    Witnessed { witness: SubstitutabilityWitness },
    /// Neither side has a witness at any size.
    Infeasible,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    /// Factorization exceeded its bound.
    FactorTimeout(String),
    /// Some touching letter has no witness.
    Unwitnessed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    Equivalent {
        /// `ρ_1^p = ρ_n^q`.
        dependence: (u64, u64),
        fast_path: Option<FastPathCondition>,
        witnesses: Vec<SubstitutabilityWitness>,
    },
    NotEquivalent {
        reason: NotEquivalentReason,
    },
    Unknown {
        reason: UnknownReason,
        budget: Budget,
        letters: Vec<(usize, LetterStatus)>,
    },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equivalent { .. } => "equivalent",
            Verdict::NotEquivalent { .. } => "not-equivalent",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn witnesses(&self) -> &[SubstitutabilityWitness] {
        match self {
            Verdict::Equivalent { witnesses, .. } => witnesses,
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecideConfig {
    pub budget: Budget,
    pub factor: FactorConfig,
    /// Assertion that `μ_2, μ_3` are algebraically independent.
    pub declared_independence: bool,
}

fn timeout(e: NumError, budget: Budget) -> Result<Verdict, DecideError> {
    match e {
        NumError::FactorTimeout(m) => Ok(Verdict::Unknown {
            reason: UnknownReason::FactorTimeout(m),
            budget,
            letters: Vec::new(),
        }),
        e => Err(e.into()),
    }
}

/// The verdict on `ifs` against its dust counterpart.
pub fn verdict(ifs: &Ifs, cfg: &DecideConfig) -> Result<Verdict, DecideError> {
    let (p, q) = match check_necessary(ifs, &cfg.factor) {
        Ok(Necessary::Pass { p, q }) => (p, q),
        Ok(Necessary::Fail) => {
            return Ok(Verdict::NotEquivalent {
                reason: NotEquivalentReason::LogRatio,
            })
        }
        Err(e) => return timeout(e, cfg.budget),
    };
    if cfg.declared_independence {
        if let Some(reason) = branch4_rule(ifs, true)? {
            return Ok(Verdict::NotEquivalent { reason });
        }
    }
    match corollary_fastpath(ifs, &cfg.factor) {
        Ok(Some((cond, witnesses))) => {
            return Ok(Verdict::Equivalent {
                dependence: (p, q),
                fast_path: Some(cond),
                witnesses,
            })
        }
        Ok(None) => {}
        Err(DecideError::Num(e)) => return timeout(e, cfg.budget),
        Err(e) => return Err(e),
    }
    let mut letters = Vec::new();
    for &i in &ifs.ts.sigma_t {
        let status = match substitutable(ifs, i, &cfg.budget, &cfg.factor) {
            Ok(SearchOutcome::Found(w)) => {
                if !w.verify(ifs) {
                    return Err(DecideError::Unverified(w));
                }
                LetterStatus::Witnessed { witness: w }
            }
            Ok(SearchOutcome::Infeasible) => LetterStatus::Infeasible,
            Ok(SearchOutcome::Exhausted) => LetterStatus::Exhausted,
            Err(e) => return timeout(e, cfg.budget),
        };
        letters.push((i, status));
    }
    if letters.iter().all(|(_, s)| matches!(s, LetterStatus::Witnessed { .. })) {
        let witnesses = letters
            .into_iter()
            .map(|(_, s)| match s {
                LetterStatus::Witnessed { witness } => witness,
                _ => unreachable!(),
            })
            .collect();
        return Ok(Verdict::Equivalent {
            dependence: (p, q),
            fast_path: None,
            witnesses,
        });
    }
    Ok(Verdict::Unknown {
        reason: UnknownReason::Unwitnessed,
        budget: cfg.budget,
        letters,
    })
}
