use std::fmt;
use std::str::FromStr;

use super::TrigPoly;
use crate::linalg::{self, CMat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schatten {
    One,
    Two,
    Inf,
}

impl Schatten {
    pub const ALL: [Schatten; 3] = [Schatten::One, Schatten::Two, Schatten::Inf];
}

impl fmt::Display for Schatten {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schatten::One => "1",
            Schatten::Two => "2",
            Schatten::Inf => "inf",
        })
    }
}

/// p-norm of the singular values. `p = 2` is computed entrywise.
pub fn schatten_norm(m: &CMat, p: Schatten) -> f64 {
    match p {
        Schatten::Two => linalg::frobenius(m),
        Schatten::One => linalg::singular_values(m).iter().sum(),
        Schatten::Inf => linalg::singular_values(m).into_iter().fold(0.0, f64::max),
    }
}

/// Weighted coefficient norms: `A` is `sum d ||f^||_1`, `ADelta(n)` is
/// `sum d^((2^n + 1)/2) ||f^||_2` and `AGamma` is `sum d^2 ||f^||_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraNormKind {
    A,
    ADelta(u32),
    AGamma,
}

impl AlgebraNormKind {
    pub fn adelta(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("ADelta order must be at least 1".into()));
        }
        Ok(AlgebraNormKind::ADelta(n))
    }

    fn block(&self, d: usize, m: &CMat) -> f64 {
        let d = d as f64;
        match *self {
            AlgebraNormKind::A => d * schatten_norm(m, Schatten::One),
            AlgebraNormKind::ADelta(n) => {
                let exponent = ((1u64 << n) as f64 + 1.0) / 2.0;
                d.powf(exponent) * schatten_norm(m, Schatten::Two)
            }
            AlgebraNormKind::AGamma => d * d * schatten_norm(m, Schatten::One),
        }
    }
}

impl FromStr for AlgebraNormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "a" => Ok(AlgebraNormKind::A),
            "agamma" => Ok(AlgebraNormKind::AGamma),
            "adelta" => Ok(AlgebraNormKind::ADelta(1)),
            _ => {
                let n = lower
                    .strip_prefix("adelta:")
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown algebra '{s}' (a, adelta:n, agamma)")))?;
                AlgebraNormKind::adelta(n)
            }
        }
    }
}

impl fmt::Display for AlgebraNormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraNormKind::A => f.write_str("a"),
            AlgebraNormKind::ADelta(n) => write!(f, "adelta:{n}"),
            AlgebraNormKind::AGamma => f.write_str("agamma"),
        }
    }
}

/// The algebra norm of `f`, summed over canonical labels in label order.
pub fn algebra_norm(f: &TrigPoly, kind: AlgebraNormKind) -> Result<f64> {
    let canon = f.canonical()?;
    let mut total = 0.0;
    for (label, m) in canon.coeffs() {
        total += kind.block(canon.group().irrep_dim(label)?, m);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupModel, IrrepLabel};
    use crate::linalg::{rank_one, C64};

    fn real(rows: usize, cols: usize, v: &[f64]) -> CMat {
        CMat::from_row_slice(rows, cols, &v.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn simple_schatten_values() {
        assert!((schatten_norm(&linalg::identity(3), Schatten::One) - 3.0).abs() < 1e-14);
        assert!((schatten_norm(&real(2, 2, &[3.0, 0.0, 0.0, 4.0]), Schatten::Two) - 5.0).abs() < 1e-14);
        assert!((schatten_norm(&real(2, 2, &[3.0, 0.0, 0.0, -4.0]), Schatten::Inf) - 4.0).abs() < 1e-14);
        assert_eq!(schatten_norm(&CMat::zeros(0, 0), Schatten::One), 0.0);
    }

    #[test]
    fn rank_one_norm_is_product_of_vector_norms() {
        let zeta = [C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.0, 3.0)];
        let theta = [C64::new(0.2, -1.0), C64::new(2.0, 2.0), C64::new(1.0, 0.0)];
        let vnorm = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let want = vnorm(&zeta) * vnorm(&theta);
        for p in Schatten::ALL {
            assert!((schatten_norm(&rank_one(&theta, &zeta), p) - want).abs() < 1e-12 * want, "p = {p}");
        }
    }

    #[test]
    fn parse_kinds() {
        assert_eq!("a".parse::<AlgebraNormKind>().unwrap(), AlgebraNormKind::A);
        assert_eq!("ADelta:3".parse::<AlgebraNormKind>().unwrap(), AlgebraNormKind::ADelta(3));
        assert_eq!("agamma".parse::<AlgebraNormKind>().unwrap(), AlgebraNormKind::AGamma);
        assert!("adelta:0".parse::<AlgebraNormKind>().is_err());
        assert!("b".parse::<AlgebraNormKind>().is_err());
    }

    #[test]
    fn matrix_coefficient_norms() {
        let g = GroupModel::su2(8);
        for tj in 1..=8u32 {
            let d = (tj + 1) as f64;
            let f = TrigPoly::matrix_coefficient(&g, &IrrepLabel::spin(tj), 0, 0).unwrap();
            assert!((algebra_norm(&f, AlgebraNormKind::A).unwrap() - 1.0).abs() < 1e-12);
            assert!((algebra_norm(&f, AlgebraNormKind::ADelta(1)).unwrap() - d.sqrt()).abs() < 1e-12);
            for n in 1..=4 {
                let want = d.powf(((1u32 << n) as f64 - 1.0) / 2.0);
                let got = algebra_norm(&f, AlgebraNormKind::ADelta(n)).unwrap();
                assert!((got - want).abs() < 1e-12 * want);
            }
            let chi = TrigPoly::character(&g, &IrrepLabel::spin(tj)).unwrap();
            assert!((algebra_norm(&chi, AlgebraNormKind::A).unwrap() - d).abs() < 1e-12);
            assert!((algebra_norm(&chi, AlgebraNormKind::ADelta(1)).unwrap() - d).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_poly_has_zero_norms() {
        let z = TrigPoly::zero(&GroupModel::su2(2));
        for kind in [AlgebraNormKind::A, AlgebraNormKind::ADelta(2), AlgebraNormKind::AGamma] {
            assert_eq!(algebra_norm(&z, kind).unwrap(), 0.0);
        }
    }
}
