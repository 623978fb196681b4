//! Built-in catalog of symbol pairs with their expected condition labels,
//! and the evaluation of one entry against classifiers and exact sweeps.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characterize::{
    classify_commute, classify_holo_pair, classify_semicommute, cross_validate, is_normal_symbol,
    Mode, Outcome, PairClassification,
};
use crate::error::{OpError, ParseError};
use crate::operators::{commutator_on_basis, semicommutator_on_basis, SweepVerdict};
use crate::parse::parse_symbol;
use crate::poly::LaurentPoly;

const BUILTIN: &str = include_str!("../catalog/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogMode {
    Commute,
    Semicommute,
    /// Holomorphic `φ, ψ`; the operators are `T̂_φ` and `T̂_ψ̄`.
    Mixed,
    HoloCommute,
    HoloSemicommute,
    /// Single symbol `f`, tested against `conj(f)`.
    Normal,
}

impl fmt::Display for CatalogMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub f: String,
    #[serde(default)]
    pub g: String,
    /// Satisfied conditions as `"A,C"`, `"neither"`, or for normality
    /// entries `"normal"` / `"non-normal"`.
    pub expected: String,
    pub mode: CatalogMode,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("catalog entry `{name}`: {source}")]
    Symbol {
        name: String,
        #[source]
        source: ParseError,
    },
}

pub fn builtin() -> Vec<CatalogEntry> {
    from_json(BUILTIN).expect("built-in catalog is valid")
}

pub fn from_json(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let entries: Vec<CatalogEntry> = serde_json::from_str(text)?;
    for e in &entries {
        e.symbols()?;
    }
    Ok(entries)
}

impl CatalogEntry {
    pub fn symbols(&self) -> Result<(LaurentPoly, LaurentPoly), CatalogError> {
        let parse = |t: &str| {
            parse_symbol(t).map_err(|source| CatalogError::Symbol {
                name: self.name.clone(),
                source,
            })
        };
        let f = parse(&self.f)?;
        let g = if self.mode == CatalogMode::Normal {
            f.conjugate()
        } else {
            parse(&self.g)?
        };
        Ok((f, g))
    }

    pub fn is_table_entry(&self) -> bool {
        self.name.starts_with("table-")
    }
}

/// Result of evaluating one entry.
#[derive(Clone, Debug)]
pub struct EntryResult {
    pub name: String,
    pub mode: CatalogMode,
    pub expected: String,
    pub classified: String,
    pub outcome: Outcome,
    pub sweep: SweepVerdict,
}

impl EntryResult {
    pub fn label_matches(&self) -> bool {
        self.expected == self.classified
    }

    pub fn passed(&self) -> bool {
        self.label_matches()
            && matches!(
                self.outcome,
                Outcome::ConfirmedCommuting | Outcome::ConfirmedNoncommuting { .. }
            )
    }

    pub fn inconclusive(&self) -> bool {
        self.label_matches() && self.outcome == Outcome::InconclusiveRaiseN
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode.to_string(),
            "expected": self.expected,
            "classified": self.classified,
            "outcome": self.outcome.name(),
            "sweep": self.sweep.to_json(),
        })
    }
}

fn outcome_of(predicts_zero: bool, sweep: &SweepVerdict, what: &str) -> Outcome {
    match (sweep, predicts_zero) {
        (SweepVerdict::AllZero { .. }, true) => Outcome::ConfirmedCommuting,
        (SweepVerdict::AllZero { .. }, false) => Outcome::InconclusiveRaiseN,
        (SweepVerdict::Witness { basis, .. }, false) => Outcome::ConfirmedNoncommuting {
            witness: *basis,
            degree: basis.degree(),
        },
        (SweepVerdict::Witness { basis, residual }, true) => {
            Outcome::Bug(format!("{what} predicted but residual {residual} on {basis}"))
        }
    }
}

fn holo(
    f: &LaurentPoly,
    g: &LaurentPoly,
    mode: Mode,
    n: u32,
) -> Result<(PairClassification, SweepVerdict), OpError> {
    let class = classify_holo_pair(f, g, mode)?;
    let sweep = match mode {
        Mode::Commute => commutator_on_basis(f, g, n)?,
        Mode::Semicommute => semicommutator_on_basis(f, g, n)?,
        Mode::Mixed => commutator_on_basis(f, &g.conjugate(), n)?,
    };
    Ok((class, sweep))
}

pub fn evaluate(entry: &CatalogEntry, n: u32) -> Result<EntryResult, Box<dyn std::error::Error + Send + Sync>> {
    let (f, g) = entry.symbols()?;
    let (classified, outcome, sweep) = match entry.mode {
        CatalogMode::Commute | CatalogMode::Semicommute => {
            let mode = if entry.mode == CatalogMode::Commute {
                Mode::Commute
            } else {
                Mode::Semicommute
            };
            let cv = cross_validate(&f, &g, n, mode)?;
            (cv.classification.label(), cv.outcome, cv.sweep)
        }
        CatalogMode::Mixed | CatalogMode::HoloCommute | CatalogMode::HoloSemicommute => {
            let mode = match entry.mode {
                CatalogMode::Mixed => Mode::Mixed,
                CatalogMode::HoloCommute => Mode::Commute,
                _ => Mode::Semicommute,
            };
            let (class, sweep) = holo(&f, &g, mode, n)?;
            let outcome = outcome_of(class.predicts_zero(), &sweep, &class.verdict.to_string());
            (class.label(), outcome, sweep)
        }
        CatalogMode::Normal => {
            let normal = is_normal_symbol(&f)?;
            let sweep = commutator_on_basis(&f, &g, n)?;
            let label = if normal { "normal" } else { "non-normal" };
            (label.to_string(), outcome_of(normal, &sweep, "normality"), sweep)
        }
    };
    Ok(EntryResult {
        name: entry.name.clone(),
        mode: entry.mode,
        expected: entry.expected.clone(),
        classified,
        outcome,
        sweep,
    })
}

/// The classification labels `classify_semicommute` / `classify_commute`
/// would assign; used for table coverage.
pub fn pair_label(f: &LaurentPoly, g: &LaurentPoly, mode: Mode) -> Result<String, OpError> {
    Ok(match mode {
        Mode::Commute => classify_commute(f, g)?.label(),
        _ => classify_semicommute(f, g)?.label(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses_and_names_are_unique() {
        let entries = builtin();
        let mut names: Vec<_> = entries.iter().map(|e| e.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), entries.len());
        for mode in [
            CatalogMode::Commute,
            CatalogMode::Semicommute,
            CatalogMode::Mixed,
            CatalogMode::HoloCommute,
            CatalogMode::HoloSemicommute,
            CatalogMode::Normal,
        ] {
            assert!(entries.iter().any(|e| e.mode == mode), "{mode}");
        }
    }

    #[test]
    fn every_entry_confirms_at_low_degree() {
        for e in builtin() {
            let r = evaluate(&e, 4).unwrap();
            assert!(r.passed(), "{}: {r:?}", e.name);
        }
    }

    #[test]
    fn bad_entries_are_rejected() {
        assert!(from_json("{").is_err());
        let bad = r#"[{"name":"x","f":"z1 +","g":"1","expected":"C","mode":"commute"}]"#;
        assert!(matches!(from_json(bad), Err(CatalogError::Symbol { .. })));
        let bad_mode = r#"[{"name":"x","f":"z1","g":"1","expected":"C","mode":"sideways"}]"#;
        assert!(from_json(bad_mode).is_err());
    }
}
