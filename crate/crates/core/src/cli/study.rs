use std::str::FromStr;

use serde::Serialize;

use super::config::CheckConfig;
use crate::contour::{qtsym_rhs, z_contour, Backend};
use crate::error::{Error, Result};
use crate::measures::{phl_joint, pqw_shifted_cdf, z_sum, MeasureSpec, TruncationSpec};
use crate::scalar::{self, zero};
use crate::sixvertex::quasi_joint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StudyParam {
    K,
    L,
    Nodes,
    Order,
}

impl FromStr for StudyParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" | "k" => Ok(StudyParam::K),
            "L" | "l" => Ok(StudyParam::L),
            "nodes" => Ok(StudyParam::Nodes),
            "order" => Ok(StudyParam::Order),
            other => Err(Error::Config {
                key: "param".into(),
                msg: format!("unknown study parameter `{other}`"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StudyRow {
    pub value: usize,
    pub result: f64,
    /// `result` minus the previous row's `result`.
    pub delta: Option<f64>,
}

/// Runs one check's observable at a sequence of truncation settings:
/// `K` and `L` step by 2, `order` by 4, `nodes` doubles.
///
/// | check | parameter     | observable                                   |
/// |-------|---------------|----------------------------------------------|
/// | A1    | K             | enumerated CDF at `n_max`                    |
/// | A1    | nodes, order  | torus integral at `n_max`                    |
/// | A7    | K             | truncated total mass of the joint table      |
/// | A7    | L             | chain probability of `W = 0`                 |
/// | A13   | K             | enumerated `Z` at `n_max`, `N = 1`           |
/// | A13   | nodes, order  | torus integral of `Z`                        |
pub fn convergence_study(
    cfg: &CheckConfig,
    param: StudyParam,
    steps: usize,
) -> Result<Vec<StudyRow>> {
    let unsupported = || Error::Config {
        key: "param".into(),
        msg: format!("{param:?} is not studied for {}", cfg.check_id),
    };
    let start = match param {
        StudyParam::K => cfg.count("K", 8)?,
        StudyParam::L => cfg.count("L", 4)?,
        StudyParam::Nodes => cfg.count("nodes", 8)?,
        StudyParam::Order => cfg.count("order", 8)?,
    };
    let value_at = |i: usize| match param {
        StudyParam::K | StudyParam::L => start + 2 * i,
        StudyParam::Order => start + 4 * i,
        StudyParam::Nodes => start << i,
    };
    let pinned = |nodes: usize| Backend::Quadrature {
        nodes,
        max_nodes: nodes,
        tol: 0.0,
    };
    let mut eval: Box<dyn FnMut(usize) -> Result<f64>> = match cfg.check_id.as_str() {
        "A1" => {
            let s = MeasureSpec {
                q: cfg.rational("q", "3/10")?,
                t: zero(),
                u: cfg.rational("u", "1/7")?,
                a: cfg.rationals("a", "1/3, 1/4")?,
                b: cfg.rationals("b", "1/5, 1/6")?,
            };
            s.validate()?;
            let n = cfg.count("n_max", 2)?;
            match param {
                StudyParam::K => Box::new(move |k| {
                    Ok(pqw_shifted_cdf(&s, n, &TruncationSpec::new(k, 0.0))?.to_f64())
                }),
                StudyParam::Nodes => Box::new(move |v| Ok(qtsym_rhs(n, &s, pinned(v))?.value)),
                StudyParam::Order => {
                    Box::new(move |v| Ok(qtsym_rhs(n, &s, Backend::Series { order: v })?.value))
                }
                StudyParam::L => return Err(unsupported()),
            }
        }
        "A7" => {
            let s = MeasureSpec {
                q: zero(),
                t: cfg.rational("t", "1/4")?,
                u: cfg.rational("u", "1/3")?,
                a: cfg.rationals("a", "1/3, 1/4")?,
                b: cfg.rationals("b", "1/5, 1/6")?,
            };
            s.validate()?;
            match param {
                StudyParam::K => Box::new(move |k| {
                    Ok(scalar::to_f64(
                        &phl_joint(&s, &TruncationSpec::new(k, 0.0))?.total(),
                    ))
                }),
                StudyParam::L => {
                    let cap = cfg.count("cap", 10)?;
                    Box::new(move |l| {
                        let j = quasi_joint(l, cap, &s)?;
                        Ok(j.entries
                            .iter()
                            .filter(|(k, _)| k.base_length == 0)
                            .map(|(_, v)| scalar::to_f64(v))
                            .sum())
                    })
                }
                _ => return Err(unsupported()),
            }
        }
        "A13" => {
            let x = cfg.rationals("x", "1/3, 1/4")?;
            let q = cfg.rational("q", "1/5")?;
            let u = cfg.rational("u", "1/6")?;
            let n = cfg.count("n_max", 2)?;
            match param {
                StudyParam::K => Box::new(move |k| {
                    Ok(z_sum(n, 1, &q, &u, &x, &TruncationSpec::new(k, 0.0))?.to_f64())
                }),
                StudyParam::Nodes => {
                    Box::new(move |v| Ok(z_contour(n, 1, &q, &u, &x, pinned(v))?.value))
                }
                StudyParam::Order => Box::new(move |v| {
                    Ok(z_contour(n, 1, &q, &u, &x, Backend::Series { order: v })?.value)
                }),
                StudyParam::L => return Err(unsupported()),
            }
        }
        _ => return Err(unsupported()),
    };
    let mut rows: Vec<StudyRow> = Vec::with_capacity(steps);
    for i in 0..steps {
        let value = value_at(i);
        let result = eval(value)?;
        let delta = rows.last().map(|r| result - r.result);
        rows.push(StudyRow {
            value,
            result,
            delta,
        });
    }
    Ok(rows)
}

pub fn study_csv(param: StudyParam, rows: &[StudyRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["parameter", "value", "result", "delta"])
        .map_err(csv_err)?;
    for r in rows {
        let delta = r.delta.map_or_else(String::new, |d| format!("{d:e}"));
        w.write_record([
            format!("{param:?}"),
            r.value.to_string(),
            format!("{:e}", r.result),
            delta,
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub(crate) fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::Profile;

    #[test]
    fn quadrature_nodes_converge() {
        let cfg = CheckConfig::new("A13", Profile::Desk);
        let rows = convergence_study(&cfg, StudyParam::Nodes, 4).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.value).collect::<Vec<_>>(),
            [8, 16, 32, 64]
        );
        let d: Vec<f64> = rows.iter().filter_map(|r| r.delta.map(f64::abs)).collect();
        assert!(d[0] > 1e-12 && d[1] < 1e-12 && d[2] < 1e-12, "{d:?}");
        assert!(convergence_study(&cfg, StudyParam::L, 2).is_err());
    }
}
