use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{one, Scalar};

/// Stochastic vertex law with `p = (1 - ab)/(1 - tab)`.
///
/// An arrow entering from the left alone continues right with probability `p`
/// and turns up with `1 - p`; an arrow entering from below alone continues up
/// with probability `tp` and turns right with `1 - tp`. Empty and doubly
/// occupied vertices are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLaw {
    pub p: Scalar,
    pub t: Scalar,
}

impl VertexLaw {
    pub fn new(a: &Scalar, b: &Scalar, t: &Scalar) -> Result<Self> {
        let ab = a * b;
        if a.is_negative() || b.is_negative() || ab >= one() {
            return Err(Error::Domain(format!(
                "vertex law needs 0 ≤ a, b and ab < 1, got a = {a}, b = {b}"
            )));
        }
        if t.is_negative() || *t >= one() {
            return Err(Error::Domain(format!("t = {t} must lie in [0, 1)")));
        }
        Ok(VertexLaw {
            p: (one() - &ab) / (one() - t * &ab),
            t: t.clone(),
        })
    }

    /// Probability of `(right, top)` given `(left, bottom)` inputs.
    pub fn prob(&self, left: bool, bottom: bool, right: bool, top: bool) -> Scalar {
        if left as u8 + bottom as u8 != right as u8 + top as u8 {
            return Scalar::from_integer(0.into());
        }
        match (left, bottom) {
            (false, false) | (true, true) => one(),
            (true, false) if right => self.p.clone(),
            (true, false) => one() - &self.p,
            (false, true) if top => &self.t * &self.p,
            (false, true) => one() - &self.t * &self.p,
        }
    }

    /// The four nontrivial branch probabilities `(p, 1-p, tp, 1-tp)`.
    pub fn branches(&self) -> [Scalar; 4] {
        let tp = &self.t * &self.p;
        [self.p.clone(), one() - &self.p, tp.clone(), one() - tp]
    }
}

/// Alias matching the operation name used by the CLI.
pub fn vertex_probs(a: &Scalar, b: &Scalar, t: &Scalar) -> Result<VertexLaw> {
    VertexLaw::new(a, b, t)
}
