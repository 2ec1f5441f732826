use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::scalar::{self, Scalar};

/// Rationals longer than this are written as decimals.
const MAX_EXACT_LEN: usize = 48;

/// `p/q` when short, otherwise a decimal tagged approximate with `~`.
pub fn exact(v: &Scalar) -> String {
    let s = scalar::format(v);
    if s.len() <= MAX_EXACT_LEN {
        s
    } else {
        approx(scalar::to_f64(v))
    }
}

pub fn approx(v: f64) -> String {
    format!("~{v:e}")
}

/// One compared quantity.
#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub tolerance: String,
    pub pass: bool,
    /// `abs_err / tolerance`, or infinity for a nonzero exact residual.
    #[serde(skip)]
    pub score: f64,
}

impl Item {
    /// Exact equality, tolerance zero.
    pub fn exact(label: impl Into<String>, lhs: &Scalar, rhs: &Scalar) -> Self {
        let err = scalar::abs(&(lhs - rhs));
        let pass = err.is_zero();
        Item {
            label: label.into(),
            lhs: exact(lhs),
            rhs: exact(rhs),
            abs_err: exact(&err),
            rel_err: rel(scalar::to_f64(&err), scalar::to_f64(rhs)),
            tolerance: "0".into(),
            pass,
            score: if pass { 0.0 } else { f64::INFINITY },
        }
    }

    /// `|lhs - rhs| ≤ tol` with exact arithmetic on both sides.
    pub fn exact_within(
        label: impl Into<String>,
        lhs: &Scalar,
        rhs: &Scalar,
        tol: &Scalar,
    ) -> Self {
        let err = scalar::abs(&(lhs - rhs));
        let (e, t) = (scalar::to_f64(&err), scalar::to_f64(tol));
        Item {
            label: label.into(),
            lhs: exact(lhs),
            rhs: exact(rhs),
            abs_err: exact(&err),
            rel_err: rel(e, scalar::to_f64(rhs)),
            tolerance: exact(tol),
            pass: err <= *tol,
            score: if t > 0.0 {
                e / t
            } else if e == 0.0 {
                0.0
            } else {
                f64::INFINITY
            },
        }
    }

    pub fn float(label: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let err = (lhs - rhs).abs();
        Item {
            label: label.into(),
            lhs: approx(lhs),
            rhs: approx(rhs),
            abs_err: approx(err),
            rel_err: rel(err, rhs),
            tolerance: approx(tol),
            pass: err <= tol,
            score: if err.is_nan() {
                f64::INFINITY
            } else {
                err / tol
            },
        }
    }

    /// A boolean condition with no numeric sides.
    pub fn holds(label: impl Into<String>, pass: bool) -> Self {
        Item {
            label: label.into(),
            lhs: pass.to_string(),
            rhs: "true".into(),
            abs_err: if pass { "0" } else { "1" }.into(),
            rel_err: if pass { "0" } else { "1" }.into(),
            tolerance: "0".into(),
            pass,
            score: if pass { 0.0 } else { f64::INFINITY },
        }
    }
}

fn rel(err: f64, rhs: f64) -> String {
    if err == 0.0 {
        "0".into()
    } else if rhs == 0.0 {
        approx(err)
    } else {
        approx(err / rhs.abs())
    }
}

/// Machine-readable outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub statement: String,
    pub params: BTreeMap<String, String>,
    /// The worst item's sides and errors.
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub tolerance: String,
    pub truncation: BTreeMap<String, String>,
    pub items: Vec<Item>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl CheckReport {
    pub fn assemble(
        check_id: &str,
        statement: &str,
        params: BTreeMap<String, String>,
        truncation: BTreeMap<String, String>,
        items: Vec<Item>,
        reason: Option<String>,
    ) -> Self {
        let worst = items.iter().max_by(|a, b| a.score.total_cmp(&b.score));
        let field = |f: fn(&Item) -> &String| worst.map_or_else(String::new, |w| f(w).clone());
        let pass = reason.is_none() && !items.is_empty() && items.iter().all(|i| i.pass);
        let reason = reason.or_else(|| {
            let failed: Vec<&str> = items
                .iter()
                .filter(|i| !i.pass)
                .map(|i| i.label.as_str())
                .collect();
            (!failed.is_empty()).then(|| format!("failed: {}", failed.join("; ")))
        });
        CheckReport {
            check_id: check_id.into(),
            statement: statement.into(),
            params,
            lhs: field(|i| &i.lhs),
            rhs: field(|i| &i.rhs),
            abs_err: field(|i| &i.abs_err),
            rel_err: field(|i| &i.rel_err),
            tolerance: field(|i| &i.tolerance),
            truncation,
            items,
            pass,
            reason,
            runtime_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Writes `contents` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
