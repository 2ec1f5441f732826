use std::collections::BTreeMap;
use std::str::FromStr;

use super::config::CheckConfig;
use super::report::exact;
use super::study::{csv_err, finish};
use crate::error::{Error, Result};
use crate::measures::{phl_joint, sample, JointKey, JointTable, MeasureSpec, TruncationSpec};
use crate::scalar::{self, zero, Scalar};
use crate::sixvertex::{mc_sample, quasi_joint, shift_by_geometric, stationary_study};

/// Tables that can be written in the shared `W,S1,S2,probability` schema,
/// plus the stationary-distance study.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// Periodic Hall-Littlewood joint law, truncated at `K`.
    Phl,
    /// Quasi-periodic six vertex chain, `W` unshifted.
    Quasi,
    /// Quasi-periodic chain with `W` shifted by an independent geometric.
    Shifted,
    /// Total-variation distance to the stationary law along `us`.
    Stationary,
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phl" => Ok(Table::Phl),
            "quasi" => Ok(Table::Quasi),
            "shifted" => Ok(Table::Shifted),
            "stationary" => Ok(Table::Stationary),
            other => Err(Error::Config {
                key: "table".into(),
                msg: format!("unknown table `{other}`"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Phl,
    SixVertex,
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phl" => Ok(Model::Phl),
            "sixvertex" | "6vm" => Ok(Model::SixVertex),
            other => Err(Error::Config {
                key: "model".into(),
                msg: format!("unknown model `{other}`"),
            }),
        }
    }
}

/// Parameters shared by every table; defaults are those of check A7.
fn table_spec(cfg: &CheckConfig) -> Result<MeasureSpec> {
    let s = MeasureSpec {
        q: zero(),
        t: cfg.rational("t", "1/4")?,
        u: cfg.rational("u", "1/3")?,
        a: cfg.rationals("a", "1/3, 1/4")?,
        b: cfg.rationals("b", "1/5, 1/6")?,
    };
    s.validate()?;
    Ok(s)
}

fn key_fields(key: &JointKey, m: usize, n: usize) -> [String; 3] {
    [
        key.base_length.to_string(),
        JointTable::bits(key.up, m),
        JointTable::bits(key.down, n),
    ]
}

fn joint_csv<'a>(
    m: usize,
    n: usize,
    entries: impl IntoIterator<Item = (&'a JointKey, &'a Scalar)>,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["W", "S1", "S2", "probability"])
        .map_err(csv_err)?;
    for (key, p) in entries {
        let [a, b, c] = key_fields(key, m, n);
        w.write_record([a, b, c, exact(p)]).map_err(csv_err)?;
    }
    finish(w)
}

pub fn export_distribution(cfg: &CheckConfig, table: Table) -> Result<String> {
    let s = table_spec(cfg)?;
    let (m, n) = (s.m(), s.n_letters());
    match table {
        Table::Phl => {
            let t = phl_joint(
                &s,
                &TruncationSpec::new(cfg.cap("K", 12)?, cfg.float("tol", 1e-6)?),
            )?;
            joint_csv(m, n, &t.entries)
        }
        Table::Quasi | Table::Shifted => {
            let mut j = quasi_joint(cfg.size("L", 12)?, cfg.cap("cap", 10)?, &s)?;
            if table == Table::Shifted {
                j = shift_by_geometric(&j, &s.u)?;
            }
            joint_csv(m, n, &j.entries)
        }
        Table::Stationary => {
            let us = cfg.rationals("us", "9/10, 99/100, 999/1000")?;
            let rows = stationary_study(&s, &us, cfg.size("L", 40)?)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["u", "total_variation"]).map_err(csv_err)?;
            for (u, tv) in rows {
                w.write_record([format!("{u}"), format!("{tv:e}")])
                    .map_err(csv_err)?;
            }
            finish(w)
        }
    }
}

/// Seeded samples tallied in the shared schema with an extra count column.
pub fn sample_distribution(cfg: &CheckConfig, model: Model) -> Result<String> {
    let s = table_spec(cfg)?;
    let (m, n) = (s.m(), s.n_letters());
    let samples = cfg.size("samples", 10_000)?;
    let seed = cfg.seed(0)?;
    let counts: BTreeMap<JointKey, u64> = match model {
        Model::SixVertex => mc_sample(cfg.size("L", 12)?, samples, seed, &s)?.counts,
        Model::Phl => {
            let trunc = TruncationSpec::new(cfg.cap("K", 8)?, cfg.float("tol", 1e-6)?);
            let mut c = BTreeMap::new();
            for state in sample(&s, &trunc, seed, samples)? {
                *c.entry(state.joint_key()).or_insert(0u64) += 1;
            }
            c
        }
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["W", "S1", "S2", "count", "frequency"])
        .map_err(csv_err)?;
    for (key, count) in counts {
        let [a, b, c] = key_fields(&key, m, n);
        let f = scalar::rat(count as i64, samples as i64);
        w.write_record([a, b, c, count.to_string(), exact(&f)])
            .map_err(csv_err)?;
    }
    finish(w)
}
