//! Exact rationals and generalized binomial coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rat;

pub fn int(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

/// `p / q`, panicking on `q = 0`.
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Comma-separated list of rationals, e.g. `"1,3/2,2"`.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

/// Best-effort `f64` view for display and plotting.
pub fn to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: scale through the bit lengths
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift > 0 {
            x / Rat::from_integer(BigInt::one() << shift as usize)
        } else {
            x * Rat::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Coefficients `c_0..=c_order` of `(1 − w)^λ = Σ c_p w^p`,
/// `c_p = (−1)^p λ(λ−1)⋯(λ−p+1)/p!`.
pub fn gen_binomial(lam: &Rat, order: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = Rat::one();
    out.push(c.clone());
    for p in 1..=order {
        // c_p = c_{p-1} · (p − 1 − λ) / p
        c = c * (int(p as i64 - 1) - lam) / int(p as i64);
        out.push(c.clone());
    }
    out
}

/// Cauchy product of two coefficient lists, truncated to the shorter order.
pub fn cauchy_product(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|p| (0..=p).map(|i| &a[i] * &b[p - i]).sum())
        .collect()
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(&int(1), 3), vec![int(1), int(-1), int(0), int(0)]);
        assert_eq!(gen_binomial(&int(-1), 3), vec![int(1); 4]);
        assert_eq!(
            gen_binomial(&frac(1, 2), 2),
            vec![int(1), frac(-1, 2), frac(-1, 8)]
        );
    }

    #[test]
    fn binomial_terminates_for_non_negative_integers() {
        for lam in 0..6 {
            let c = gen_binomial(&int(lam), 10);
            for (p, x) in c.iter().enumerate() {
                assert_eq!(x.is_zero(), p as i64 > lam, "λ={lam} p={p}");
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rat("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rat("-2").unwrap(), int(-2));
        assert_eq!(parse_rat(" 4 / -8 ").unwrap(), frac(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(parse_rat(&frac(-7, 3).to_string()).unwrap(), frac(-7, 3));
        assert_eq!(parse_rat_list("1,3/2,2").unwrap(), vec![int(1), frac(3, 2), int(2)]);
    }

    proptest! {
        #[test]
        fn binomial_inverse_pair(p in -20i64..20, q in 1i64..9, order in 0usize..12) {
            let lam = frac(p, q);
            let prod = cauchy_product(&gen_binomial(&lam, order), &gen_binomial(&-lam.clone(), order));
            for (i, x) in prod.iter().enumerate() {
                prop_assert_eq!(x.clone(), if i == 0 { int(1) } else { int(0) });
            }
        }
    }
}
