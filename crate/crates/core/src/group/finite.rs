//! Finite groups given by multiplication tables together with a complete
//! table of unitary irreducible representations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::linalg::{self, CMat, C64, ONE, ZERO};
use crate::{Error, Result};

const TABLE_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct FiniteIrrep {
    pub dim: usize,
    /// One unitary matrix per group element.
    pub matrices: Vec<CMat>,
}

/// Conjugate partner of an irrep: `conj(pi(s)) = V sigma(s) V^*`.
#[derive(Clone, Debug)]
pub struct ConjugatePartner {
    pub index: usize,
    pub intertwiner: CMat,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    irreps: Vec<FiniteIrrep>,
    partners: Vec<ConjugatePartner>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.mul == other.mul
    }
}

impl FiniteGroup {
    /// Validates the table and irreps, then precomputes conjugate partners.
    pub fn new(
        name: impl Into<String>,
        mul: Vec<Vec<usize>>,
        inv: Vec<usize>,
        identity: usize,
        irreps: Vec<FiniteIrrep>,
    ) -> Result<Self> {
        let name = name.into();
        let n = mul.len();
        let bad = |msg: String| Err(Error::InvalidGroup(format!("{name}: {msg}")));
        if n == 0 || identity >= n || inv.len() != n {
            return bad("empty table, bad identity or inverse list".into());
        }
        if mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("multiplication table is not n x n over 0..n".into());
        }
        for a in 0..n {
            if mul[identity][a] != a || mul[a][identity] != a {
                return bad(format!("{identity} is not an identity for {a}"));
            }
            if inv[a] >= n || mul[a][inv[a]] != identity || mul[inv[a]][a] != identity {
                return bad(format!("inverse of {a} is wrong"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        for (p, irrep) in irreps.iter().enumerate() {
            if irrep.matrices.len() != n || irrep.matrices.iter().any(|m| m.shape() != (irrep.dim, irrep.dim)) {
                return bad(format!("irrep {p} has wrong matrix count or shape"));
            }
            for (s, m) in irrep.matrices.iter().enumerate() {
                if !linalg::is_unitary(m, TABLE_TOL) {
                    return bad(format!("irrep {p} is not unitary at element {s}"));
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let prod = &irrep.matrices[a] * &irrep.matrices[b];
                    if linalg::max_abs_diff(&prod, &irrep.matrices[mul[a][b]]) > TABLE_TOL {
                        return bad(format!("irrep {p} is not a homomorphism at ({a}, {b})"));
                    }
                }
            }
        }
        let total: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != n {
            return bad(format!("sum of squared dimensions is {total}, order is {n}"));
        }
        // irreducible and pairwise inequivalent: character inner products
        let characters: Vec<Vec<C64>> = irreps
            .iter()
            .map(|r| r.matrices.iter().map(|m| m.trace()).collect())
            .collect();
        for p in 0..irreps.len() {
            for q in 0..irreps.len() {
                let ip: C64 = (0..n).map(|s| characters[p][s] * characters[q][s].conj()).sum::<C64>() / n as f64;
                let want = if p == q { 1.0 } else { 0.0 };
                if (ip - want).norm() > 1e-8 {
                    return bad(format!("characters {p}, {q} have inner product {ip}"));
                }
            }
        }
        let mut group = FiniteGroup { name, mul, inv, identity, irreps, partners: Vec::new() };
        group.partners = (0..group.irreps.len()).map(|p| group.find_partner(p, &characters)).collect::<Result<_>>()?;
        Ok(group)
    }

    fn find_partner(&self, p: usize, characters: &[Vec<C64>]) -> Result<ConjugatePartner> {
        let n = self.order();
        let target: Vec<C64> = characters[p].iter().map(|c| c.conj()).collect();
        let index = (0..self.irreps.len())
            .find(|&q| (0..n).all(|s| (characters[q][s] - target[s]).norm() < 1e-8))
            .ok_or_else(|| Error::InvalidGroup(format!("{}: conjugate of irrep {p} missing", self.name)))?;
        let d = self.irreps[p].dim;
        // Average conj(pi(s)) X sigma(s)^* over the group for a matrix unit X;
        // Schur's lemma makes the result a multiple of a unitary.
        let mut best = CMat::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let mut acc = CMat::zeros(d, d);
                for s in 0..n {
                    let left = linalg::conj(&self.irreps[p].matrices[s]).column(a).into_owned();
                    let right = self.irreps[index].matrices[s].adjoint().row(b).into_owned();
                    acc += left * right;
                }
                if linalg::frobenius(&acc) > linalg::frobenius(&best) {
                    best = acc;
                }
                if linalg::frobenius(&best) > 0.5 {
                    break;
                }
            }
        }
        let scale = (linalg::frobenius(&best) / (d as f64).sqrt()).max(f64::MIN_POSITIVE);
        let intertwiner = best / C64::new(scale, 0.0);
        for s in 0..n {
            let lhs = linalg::conj(&self.irreps[p].matrices[s]);
            let rhs = &intertwiner * &self.irreps[index].matrices[s] * intertwiner.adjoint();
            if linalg::max_abs_diff(&lhs, &rhs) > 1e-9 {
                return Err(Error::InvalidGroup(format!("{}: failed to intertwine conjugate of irrep {p}", self.name)));
            }
        }
        Ok(ConjugatePartner { index, intertwiner })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn irreps(&self) -> &[FiniteIrrep] {
        &self.irreps
    }

    pub fn partner(&self, p: usize) -> &ConjugatePartner {
        &self.partners[p]
    }

    /// Cyclic group `Z_n` with characters `chi_k(m) = exp(2 pi i k m / n)`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if !(1..=12).contains(&n) {
            return Err(Error::InvalidGroup(format!("built-in cyclic groups cover 1..=12, got {n}")));
        }
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        let irreps = (0..n)
            .map(|k| FiniteIrrep {
                dim: 1,
                matrices: (0..n)
                    .map(|m| CMat::from_element(1, 1, root_of_unity((k * m) % n, n)))
                    .collect(),
            })
            .collect();
        FiniteGroup::new(format!("z{n}"), mul, inv, 0, irreps)
    }

    /// Symmetric group on `{1, 2, 3}`; elements in the order
    /// `e, (12), (13), (23), (123), (132)`, composed right to left.
    pub fn s3() -> Result<Self> {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let mats: Vec<CMat> = perms
            .iter()
            .map(|p| CMat::from_fn(3, 3, |i, j| if p[j] == i { ONE } else { ZERO }))
            .collect();
        let sign: Vec<f64> = perms
            .iter()
            .map(|p| {
                let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                if inversions % 2 == 0 { 1.0 } else { -1.0 }
            })
            .collect();
        // orthonormal basis of the sum-zero plane
        let (a, b) = (1.0 / 2f64.sqrt(), 1.0 / 6f64.sqrt());
        let basis = CMat::from_row_slice(3, 2, &[a, b, -a, b, 0.0, -2.0 * b].map(|x| C64::new(x, 0.0)));
        let irreps = vec![
            scalar_irrep(&[1.0; 6]),
            scalar_irrep(&sign),
            FiniteIrrep { dim: 2, matrices: mats.iter().map(|m| basis.adjoint() * m * &basis).collect() },
        ];
        from_faithful("s3", &mats, irreps)
    }

    /// Dihedral group of the square: `e, r, r^2, r^3, s, s r, s r^2, s r^3`.
    pub fn d4() -> Result<Self> {
        let r = CMat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0].map(|x| C64::new(x, 0.0)));
        let s = CMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0].map(|x| C64::new(x, 0.0)));
        let mut mats = Vec::with_capacity(8);
        for flip in 0..2 {
            let mut m = if flip == 0 { linalg::identity(2) } else { s.clone() };
            for _ in 0..4 {
                mats.push(m.clone());
                m = &m * &r;
            }
        }
        let mut irreps = Vec::new();
        for chi_s in [1.0, -1.0] {
            for chi_r in [1.0, -1.0] {
                let vals: Vec<f64> = (0..8)
                    .map(|e| {
                        let (flip, k) = (e / 4, e % 4);
                        let fs: f64 = if flip == 1 { chi_s } else { 1.0 };
                        fs * f64::powi(chi_r, k)
                    })
                    .collect();
                irreps.push(scalar_irrep(&vals));
            }
        }
        irreps.push(FiniteIrrep { dim: 2, matrices: mats.clone() });
        from_faithful("d4", &mats, irreps)
    }

    /// Quaternion group: `1, -1, i, -i, j, -j, k, -k`.
    pub fn q8() -> Result<Self> {
        let c = |re: f64, im: f64| C64::new(re, im);
        let units = [
            CMat::identity(2, 2),
            CMat::from_row_slice(2, 2, &[c(0.0, 1.0), ZERO, ZERO, c(0.0, -1.0)]),
            CMat::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO]),
            CMat::from_row_slice(2, 2, &[ZERO, c(0.0, 1.0), c(0.0, 1.0), ZERO]),
        ];
        let mats: Vec<CMat> = units.iter().flat_map(|u| [u.clone(), -u.clone()]).collect();
        let mut irreps = Vec::new();
        for chi_j in [1.0, -1.0] {
            for chi_i in [1.0, -1.0] {
                let per_unit = [1.0, chi_i, chi_j, chi_i * chi_j];
                let vals: Vec<f64> = (0..8).map(|e| per_unit[e / 2]).collect();
                irreps.push(scalar_irrep(&vals));
            }
        }
        irreps.push(FiniteIrrep { dim: 2, matrices: mats.clone() });
        from_faithful("q8", &mats, irreps)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "s3" => FiniteGroup::s3(),
            "d4" => FiniteGroup::d4(),
            "q8" => FiniteGroup::q8(),
            _ => match name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) => FiniteGroup::cyclic(n),
                None => Err(Error::Parse(format!("unknown finite group '{name}'"))),
            },
        }
    }

    pub fn from_json(json: FiniteGroupJson) -> Result<Self> {
        if json.order != json.mul.len() {
            return Err(Error::InvalidGroup(format!("order {} disagrees with table size {}", json.order, json.mul.len())));
        }
        let irreps = json
            .irreps
            .into_iter()
            .map(|r| {
                let matrices = r.matrices.iter().map(|m| linalg::from_pairs(m)).collect::<Result<Vec<_>>>()?;
                Ok(FiniteIrrep { dim: r.dim, matrices })
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::new(json.name, json.mul, json.inv, json.identity, irreps)
    }

    pub fn to_json(&self) -> FiniteGroupJson {
        FiniteGroupJson {
            name: self.name.clone(),
            order: self.order(),
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            identity: self.identity,
            irreps: self
                .irreps
                .iter()
                .map(|r| IrrepJson { dim: r.dim, matrices: r.matrices.iter().map(linalg::to_pairs).collect() })
                .collect(),
        }
    }
}

/// On-disk layout of a finite group with its irrep table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteGroupJson {
    pub name: String,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
    pub irreps: Vec<IrrepJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepJson {
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

/// `exp(2 pi i k / n)`, exact at quarter turns.
fn root_of_unity(k: usize, n: usize) -> C64 {
    match ((4 * k).is_multiple_of(n), 4 * k / n) {
        (true, 0) => ONE,
        (true, 1) => C64::new(0.0, 1.0),
        (true, 2) => -ONE,
        (true, 3) => C64::new(0.0, -1.0),
        _ => C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64),
    }
}

fn scalar_irrep(values: &[f64]) -> FiniteIrrep {
    FiniteIrrep {
        dim: 1,
        matrices: values.iter().map(|&v| CMat::from_element(1, 1, C64::new(v, 0.0))).collect(),
    }
}

/// Builds the table by matching products inside a faithful matrix group.
fn from_faithful(name: &str, mats: &[CMat], irreps: Vec<FiniteIrrep>) -> Result<FiniteGroup> {
    let n = mats.len();
    let find = |m: &CMat| -> Result<usize> {
        mats.iter()
            .position(|x| linalg::max_abs_diff(x, m) < 1e-12)
            .ok_or_else(|| Error::InvalidGroup(format!("{name}: matrices not closed")))
    };
    let mut mul = vec![vec![0; n]; n];
    let mut inv = vec![0; n];
    for a in 0..n {
        for b in 0..n {
            mul[a][b] = find(&(&mats[a] * &mats[b]))?;
        }
        inv[a] = find(&mats[a].adjoint())?;
    }
    let identity = find(&linalg::identity(mats[0].nrows()))?;
    FiniteGroup::new(name, mul, inv, identity, irreps)
}
