use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Environment variable selecting the default truncation profile.
pub const PROFILE_ENV: &str = "PERIMAC_PROFILE";

/// Scales the default truncation parameters of every check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Smaller caps for smoke runs.
    Quick,
    /// The desk-scale defaults of the acceptance suite.
    Desk,
    /// Larger caps for convergence confirmation.
    Thorough,
}

impl Profile {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quick" => Ok(Profile::Quick),
            "desk" | "" => Ok(Profile::Desk),
            "thorough" => Ok(Profile::Thorough),
            other => Err(Error::Config {
                key: PROFILE_ENV.into(),
                msg: format!("unknown profile `{other}`"),
            }),
        }
    }

    pub fn from_env() -> Result<Self> {
        std::env::var(PROFILE_ENV).map_or(Ok(Profile::Desk), |v| Profile::parse(&v))
    }

    /// Adjusts an enumeration cap.
    pub fn cap(self, desk: usize) -> usize {
        match self {
            Profile::Quick => desk.saturating_sub(4).max(2),
            Profile::Desk => desk,
            Profile::Thorough => desk + 4,
        }
    }

    /// Adjusts a node count, chain length or sample count.
    pub fn size(self, desk: usize) -> usize {
        match self {
            Profile::Quick => (desk / 2).max(1),
            Profile::Desk => desk,
            Profile::Thorough => desk * 2,
        }
    }
}

const KNOWN_KEYS: &[&str] = &[
    "check_id",
    "q",
    "t",
    "u",
    "a",
    "b",
    "x",
    "n_max",
    "m_max",
    "K",
    "cap",
    "order",
    "nodes",
    "max_nodes",
    "L",
    "samples",
    "seed",
    "tol",
    "instances",
    "us",
    "size_max",
    "profile",
];

/// Flat `key = value` configuration. Every value read through a typed getter
/// is echoed into [`CheckConfig::used`] for the report.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub check_id: String,
    pub profile: Profile,
    values: BTreeMap<String, String>,
    used: RefCell<BTreeMap<String, String>>,
}

impl CheckConfig {
    pub fn new(check_id: &str, profile: Profile) -> Self {
        CheckConfig {
            check_id: check_id.to_ascii_uppercase(),
            profile,
            values: BTreeMap::new(),
            used: RefCell::new(BTreeMap::new()),
        }
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str, check_id: Option<&str>, profile: Profile) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config {
                key: format!("line {}", lineno + 1),
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            let k = k.trim();
            if !KNOWN_KEYS.contains(&k) {
                return Err(Error::Config {
                    key: k.into(),
                    msg: "unknown key".into(),
                });
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        let profile = match values.get("profile") {
            Some(p) => Profile::parse(p)?,
            None => profile,
        };
        let id = match (check_id, values.get("check_id")) {
            (Some(id), _) => id.to_string(),
            (None, Some(id)) => id.clone(),
            (None, None) => {
                return Err(Error::Config {
                    key: "check_id".into(),
                    msg: "missing".into(),
                })
            }
        };
        let mut cfg = CheckConfig::new(&id, profile);
        values.remove("check_id");
        values.remove("profile");
        cfg.values = values;
        Ok(cfg)
    }

    pub fn load(path: &Path, check_id: Option<&str>, profile: Profile) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            key: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::parse(&text, check_id, profile)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.values.insert(key.into(), value.into());
    }

    fn raw(&self, key: &str, default: String) -> String {
        let v = self.values.get(key).cloned().unwrap_or(default);
        self.used.borrow_mut().insert(key.into(), v.clone());
        v
    }

    pub fn rational(&self, key: &str, default: &str) -> Result<Scalar> {
        let v = self.raw(key, default.into());
        scalar::parse(&v).ok_or_else(|| Error::Config {
            key: key.into(),
            msg: format!("expected a rational, got `{v}`"),
        })
    }

    pub fn rationals(&self, key: &str, default: &str) -> Result<Vec<Scalar>> {
        let v = self.raw(key, default.into());
        scalar::parse_list(&v).ok_or_else(|| Error::Config {
            key: key.into(),
            msg: format!("expected a rational list, got `{v}`"),
        })
    }

    pub fn count(&self, key: &str, default: usize) -> Result<usize> {
        let v = self.raw(key, default.to_string());
        v.parse().map_err(|_| Error::Config {
            key: key.into(),
            msg: format!("expected a count, got `{v}`"),
        })
    }

    /// Enumeration cap, adjusted by the profile when not set explicitly.
    pub fn cap(&self, key: &str, desk: usize) -> Result<usize> {
        self.count(key, self.profile.cap(desk))
    }

    /// Node count, chain length or sample size, adjusted by the profile.
    pub fn size(&self, key: &str, desk: usize) -> Result<usize> {
        self.count(key, self.profile.size(desk))
    }

    pub fn float(&self, key: &str, default: f64) -> Result<f64> {
        let v = self.raw(key, format!("{default:e}"));
        v.parse().map_err(|_| Error::Config {
            key: key.into(),
            msg: format!("expected a number, got `{v}`"),
        })
    }

    pub fn seed(&self, default: u64) -> Result<u64> {
        let v = self.raw("seed", default.to_string());
        v.parse().map_err(|_| Error::Config {
            key: "seed".into(),
            msg: format!("expected an integer, got `{v}`"),
        })
    }

    /// Records a fixed, non-configurable parameter in the echo.
    pub fn echo(&self, key: &str, value: &str) {
        self.used.borrow_mut().insert(key.into(), value.into());
    }

    /// Every key read so far with the value that was used.
    pub fn used(&self) -> BTreeMap<String, String> {
        self.used.borrow().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reports_bad_keys() {
        let cfg = CheckConfig::parse(
            "# comment\nq = 1/3\na = 1/2, 1/5\n",
            Some("a1"),
            Profile::Desk,
        )
        .unwrap();
        assert_eq!(cfg.check_id, "A1");
        assert_eq!(cfg.rationals("a", "0").unwrap().len(), 2);
        let bad = CheckConfig::parse("q = 1/x\n", Some("A1"), Profile::Desk).unwrap();
        match bad.rational("q", "0") {
            Err(Error::Config { key, .. }) => assert_eq!(key, "q"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            CheckConfig::parse("zz = 1", Some("A1"), Profile::Desk),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn profiles_scale_defaults() {
        let cfg = CheckConfig::new("A1", Profile::Thorough);
        assert_eq!(cfg.cap("K", 14).unwrap(), 18);
        assert_eq!(
            CheckConfig::new("A1", Profile::Quick)
                .size("nodes", 128)
                .unwrap(),
            64
        );
    }
}
