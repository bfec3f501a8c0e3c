//! Rational generating functions `F_m(x) = sum_{n >= 0} T(m, n) x^n = P/Q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::IntPoly;
use crate::recurrence::{fit_window, minimal_recurrence};
use crate::transfer::TransferMatrix;

/// Reduced pair `(P, Q)` with `Q(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalGF {
    #[serde(serialize_with = "as_string")]
    pub m: usize,
    #[serde(rename = "P")]
    pub p: IntPoly,
    #[serde(rename = "Q")]
    pub q: IntPoly,
}

fn as_string<S: serde::Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl RationalGF {
    /// Whether `Q * (a_0 + a_1 x + ...) - P` vanishes through the given
    /// coefficients (or up to the last degree the truncation determines).
    pub fn series_check(&self, coeffs: &[BigInt]) -> bool {
        let series = IntPoly::new(coeffs.to_vec());
        let prod = &self.q * &series;
        let diff = &prod - &self.p;
        (0..coeffs.len()).all(|i| diff.coeff(i).is_zero())
    }

    /// Power series coefficients `a_0, ..., a_{len-1}` of `P/Q`.
    pub fn expand(&self, len: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for i in 0..len {
            // Q(0) = 1, so a_i = P_i - sum_{j>=1} Q_j a_{i-j}.
            let mut a = self.p.coeff(i);
            for j in 1..=i.min(self.q.degree().unwrap_or(0)) {
                a -= self.q.coeff(j) * &out[i - j];
            }
            out.push(a);
        }
        out
    }
}

/// `F_m = P_m / Q_m` in lowest terms.
pub fn generating_function(m: usize, limits: &Limits) -> Result<RationalGF> {
    let t = TransferMatrix::for_width(m, limits)?;
    let (train, held) = fit_window(t.order());
    let forward = t.forward_terms(train + held);
    let rec = minimal_recurrence(&forward, held)?;
    let d = rec.degree();
    if !rec.coeffs()[d].is_one() {
        return Err(Error::InvalidArgument(format!(
            "minimal recurrence for m = {m} is not monic"
        )));
    }

    // Q_i = q_{d-i}
    let q = rec.to_poly().reversed();
    let mut series = vec![BigInt::one()];
    series.extend(forward);
    let full = &q * &IntPoly::new(series.clone());
    let p = IntPoly::new((0..d).map(|i| full.coeff(i)).collect());

    let g = p.gcd(&q);
    let (mut p, mut q) = if g.degree().unwrap_or(0) > 0 {
        (
            p.div_exact(&g)
                .ok_or_else(|| Error::InexactDivision("P / gcd".into()))?,
            q.div_exact(&g)
                .ok_or_else(|| Error::InexactDivision("Q / gcd".into()))?,
        )
    } else {
        (p, q)
    };
    if q.coeff(0).is_negative() {
        p = -&p;
        q = -&q;
    }
    if !q.coeff(0).is_one() {
        return Err(Error::InvalidArgument(format!(
            "reduced denominator for m = {m} has Q(0) = {}",
            q.coeff(0)
        )));
    }

    let gf = RationalGF { m, p, q };
    let window = gf.q.degree().unwrap_or(0) + gf.p.degree().unwrap_or(0) + t.order();
    if !gf.series_check(&series[..window.min(series.len())]) {
        return Err(Error::InvalidArgument(format!(
            "series check failed for m = {m}"
        )));
    }
    Ok(gf)
}

/// `deg Q - deg P`.
pub fn degree_gap(gf: &RationalGF) -> i64 {
    let dq = gf.q.degree().map_or(-1, |d| d as i64);
    let dp = gf.p.degree().map_or(-1, |d| d as i64);
    dq - dp
}

/// A pair `(s, t)` with `x^{deg Q} Q(1/x) = s Q(t x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Symmetry {
    pub s: i8,
    pub t: i8,
}

/// Every `(s, t)` in `{+1, -1}^2` satisfying the reversal identity, in the
/// order `(+1,+1), (+1,-1), (-1,+1), (-1,-1)`. Empty if `Q` has no such
/// symmetry.
pub fn classify_symmetry(q: &IntPoly) -> Vec<Symmetry> {
    assert!(!q.coeff(0).is_zero(), "Q(0) must be nonzero");
    let rev = q.reversed();
    let mut out = Vec::new();
    for s in [1i8, -1] {
        for t in [1i8, -1] {
            let rhs = q.scale_var_sign(i32::from(t)).scale(&BigInt::from(s));
            if rev == rhs {
                out.push(Symmetry { s, t });
            }
        }
    }
    out
}

/// True when the symmetries found all need the `x -> -x` substitution.
pub fn requires_twist(found: &[Symmetry]) -> bool {
    !found.is_empty() && found.iter().all(|sym| sym.t == -1)
}

/// The plain reversal statement `x^{deg Q} Q(1/x) = +Q(x)` for
/// `m = 2 (mod 4)` and `-Q(x)` otherwise, evaluated as written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralSignClaim {
    pub expected_s: i8,
    pub holds: bool,
}

pub fn literal_sign_claim(m: usize, q: &IntPoly) -> LiteralSignClaim {
    let expected_s = if m % 4 == 2 { 1 } else { -1 };
    let holds = q.reversed() == q.scale(&BigInt::from(expected_s));
    LiteralSignClaim { expected_s, holds }
}
