//! SU(2): elements, spin representations on homogeneous polynomials,
//! Clebsch-Gordan coefficients and Euler-angle quadrature.
//!
//! Spins are carried as the integer `two_j = 2j`. The spin-j representation
//! acts on polynomials of degree `2j` in `(x, y)` by `P(x, y) -> P((x, y) g)`,
//! with orthonormal basis `x^(j+m) y^(j-m) / sqrt((j+m)! (j-m)!)` ordered by
//! decreasing weight `m = j, j-1, ..., -j`. Index `k` has torus weight
//! `2j - 2k`, and the raising operator `x d/dy` has nonnegative matrix
//! entries, so Condon-Shortley Clebsch-Gordan coefficients apply directly.

use std::f64::consts::PI;

use rand::Rng;

use crate::linalg::{CMat, C64, ZERO};
use crate::{Error, Result};

/// `[[a, -conj(b)], [b, conj(a)]]` with `|a|^2 + |b|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2Element {
    a: C64,
    b: C64,
}

pub const SU2_TOL: f64 = 1e-12;

impl Su2Element {
    pub fn identity() -> Self {
        Su2Element { a: C64::new(1.0, 0.0), b: ZERO }
    }

    /// Builds an element from a 2x2 matrix, checking unitarity and `det = 1`.
    pub fn from_matrix(m: [[C64; 2]; 2]) -> Result<Self> {
        let (a, b) = (m[0][0], m[1][0]);
        let unitary_err = (m[0][1] + b.conj()).norm() + (m[1][1] - a.conj()).norm();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if unitary_err > SU2_TOL || (det - 1.0).norm() > SU2_TOL || (a.norm_sqr() + b.norm_sqr() - 1.0).abs() > SU2_TOL {
            return Err(Error::InvalidGroup("matrix is not in SU(2)".into()));
        }
        Ok(Su2Element { a, b })
    }

    /// Normalizes `(a, b)` onto the unit sphere; panics on zero input.
    pub fn from_ab(a: C64, b: C64) -> Self {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        assert!(n > 0.0, "zero quaternion");
        Su2Element { a: a / n, b: b / n }
    }

    /// `diag(e^{i theta}, e^{-i theta})`.
    pub fn torus(theta: f64) -> Self {
        Su2Element { a: C64::from_polar(1.0, theta), b: ZERO }
    }

    /// The element intertwining each spin representation with its conjugate:
    /// `conj(g) = J g J^{-1}`.
    pub fn real_structure() -> Self {
        Su2Element { a: ZERO, b: C64::new(-1.0, 0.0) }
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [[self.a, -self.b.conj()], [self.b, self.a.conj()]]
    }

    pub fn to_cmat(&self) -> CMat {
        let m = self.matrix();
        CMat::from_fn(2, 2, |i, j| m[i][j])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (x, y) = (self.matrix(), other.matrix());
        let a = x[0][0] * y[0][0] + x[0][1] * y[1][0];
        let b = x[1][0] * y[0][0] + x[1][1] * y[1][0];
        Su2Element { a, b }
    }

    pub fn inverse(&self) -> Self {
        Su2Element { a: self.a.conj(), b: -self.b }
    }

    /// Haar-random element (uniform on the 3-sphere).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
            let n = v.iter().map(|x| x * x).sum::<f64>();
            if n > 1e-8 {
                return Su2Element::from_ab(C64::new(v[0], v[1]), C64::new(v[2], v[3]));
            }
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Spin `two_j / 2` matrix of `g` in the weight-ordered polynomial basis.
pub fn spin_matrix(two_j: u32, g: &Su2Element) -> CMat {
    let d = two_j as usize + 1;
    let m = g.matrix();
    let (g11, g12, g21, g22) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let norm: Vec<f64> = (0..=two_j)
        .map(|k| (factorial(two_j - k) * factorial(k)).sqrt())
        .collect();
    let mut out = CMat::zeros(d, d);
    for k in 0..=two_j {
        // column k: (g11 x + g21 y)^p (g12 x + g22 y)^q
        let (p, q) = (two_j - k, k);
        for a in 0..=p {
            let left = binomial(p, a) * g11.powu(a) * g21.powu(p - a);
            for b in 0..=q {
                let right = binomial(q, b) * g12.powu(b) * g22.powu(q - b);
                // x-power a + b lands on row r with two_j - r = a + b
                let r = two_j - (a + b);
                out[(r as usize, k as usize)] += left * right;
            }
        }
        for r in 0..=two_j {
            out[(r as usize, k as usize)] *= norm[r as usize] / norm[k as usize];
        }
    }
    out
}

/// Torus weights `2j, 2j - 2, ..., -2j` of the weight-ordered basis.
pub fn torus_weights(two_j: u32) -> Vec<i64> {
    (0..=two_j as i64).map(|k| two_j as i64 - 2 * k).collect()
}

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | J M>` (Condon-Shortley),
/// all arguments doubled.
pub fn clebsch_gordan(tj1: u32, tm1: i64, tj2: u32, tm2: i64, tj: u32, tm: i64) -> f64 {
    let (j1, j2, jj) = (tj1 as i64, tj2 as i64, tj as i64);
    if tm1 + tm2 != tm || tm1.abs() > j1 || tm2.abs() > j2 || tm.abs() > jj {
        return 0.0;
    }
    if (j1 + tm1) % 2 != 0 || (j2 + tm2) % 2 != 0 || (jj + tm) % 2 != 0 {
        return 0.0;
    }
    if jj < (j1 - j2).abs() || jj > j1 + j2 || (j1 + j2 + jj) % 2 != 0 {
        return 0.0;
    }
    let f = |twice: i64| -> f64 {
        debug_assert!(twice % 2 == 0 && twice >= 0);
        factorial((twice / 2) as u32)
    };
    let pref = ((jj + 1) as f64 * f(jj + j1 - j2) * f(jj - j1 + j2) * f(j1 + j2 - jj)
        / f(j1 + j2 + jj + 2))
    .sqrt()
        * (f(jj + tm) * f(jj - tm) * f(j1 - tm1) * f(j1 + tm1) * f(j2 - tm2) * f(j2 + tm2)).sqrt();
    let mut sum = 0.0;
    for k in 0.. {
        let k2 = 2 * k;
        let args = [
            j1 + j2 - jj - k2,
            j1 - tm1 - k2,
            j2 + tm2 - k2,
            jj - j2 + tm1 + k2,
            jj - j1 - tm2 + k2,
        ];
        if args[0] < 0 || args[1] < 0 || args[2] < 0 {
            break;
        }
        if args[3] < 0 || args[4] < 0 {
            continue;
        }
        let denom = f(k2) * args.iter().map(|&a| f(a)).product::<f64>();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    pref * sum
}

/// Blocks `C_J` with `D^{j1}(g) (x) D^{j2}(g) = sum_J C_J D^J(g) C_J^T`; rows
/// in Kronecker order `k1 * (2 j2 + 1) + k2`.
pub fn tensor_blocks(tj1: u32, tj2: u32) -> Vec<(u32, CMat)> {
    let (d1, d2) = (tj1 as usize + 1, tj2 as usize + 1);
    let lo = (tj1 as i64 - tj2 as i64).unsigned_abs() as u32;
    (lo..=tj1 + tj2)
        .step_by(2)
        .map(|tj| {
            let dj = tj as usize + 1;
            let block = CMat::from_fn(d1 * d2, dj, |row, col| {
                let (k1, k2) = (row / d2, row % d2);
                let tm1 = tj1 as i64 - 2 * k1 as i64;
                let tm2 = tj2 as i64 - 2 * k2 as i64;
                let tm = tj as i64 - 2 * col as i64;
                C64::new(clebsch_gordan(tj1, tm1, tj2, tm2, tj, tm), 0.0)
            });
            (tj, block)
        })
        .collect()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Product quadrature over SU(2) in Euler angles `Rz(a) Ry(b) Rz(c)`,
/// exact for integrands whose factors' doubled spins sum to at most
/// `total_two_j`.
pub fn euler_quadrature(total_two_j: u32) -> Vec<(Su2Element, f64)> {
    let n_ang = 2 * total_two_j as usize + 3;
    let n_beta = total_two_j as usize / 2 + 2;
    let rz = |phi: f64| Su2Element { a: C64::from_polar(1.0, phi / 2.0), b: ZERO };
    let mut nodes = Vec::with_capacity(n_ang * n_ang * n_beta);
    for (x, wx) in gauss_legendre(n_beta) {
        let half = x.clamp(-1.0, 1.0).acos() / 2.0;
        let ry = Su2Element { a: C64::new(half.cos(), 0.0), b: C64::new(half.sin(), 0.0) };
        for ia in 0..n_ang {
            let ga = rz(4.0 * PI * ia as f64 / n_ang as f64).mul(&ry);
            for ic in 0..n_ang {
                let g = ga.mul(&rz(4.0 * PI * ic as f64 / n_ang as f64));
                nodes.push((g, wx / 2.0 / (n_ang * n_ang) as f64));
            }
        }
    }
    nodes
}

/// Equispaced angles on `(-pi, pi]`.
pub fn circle_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let t = -PI + 2.0 * PI * (k + 1) as f64 / n as f64;
            if t > PI { PI } else { t }
        })
        .collect()
}
