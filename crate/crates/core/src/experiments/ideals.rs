use serde::Serialize;

use crate::coset::CosetSpace;
use crate::linalg::{self, CMat, C64, ONE};
use crate::{Error, Result};

/// Singular values below this fraction of the largest one count as zero.
pub const RANK_TOL: f64 = 1e-10;

/// An orthonormal basis of a subspace of `C^n`, stored as columns.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: CMat,
    tag: String,
}

impl SubspaceBasis {
    /// Orthonormal basis for the column span of `spanning`.
    pub fn from_spanning(spanning: &CMat, tag: impl Into<String>) -> Self {
        SubspaceBasis { ambient: spanning.nrows(), vectors: linalg::column_basis(spanning, RANK_TOL), tag: tag.into() }
    }

    pub fn zero(ambient: usize, tag: impl Into<String>) -> Self {
        SubspaceBasis { ambient, vectors: CMat::zeros(ambient, 0), tag: tag.into() }
    }

    /// Span of the standard basis vectors at `support`.
    pub fn coordinate(ambient: usize, support: &[usize], tag: impl Into<String>) -> Self {
        let vectors = CMat::from_fn(ambient, support.len(), |r, c| if support[c] == r { ONE } else { linalg::ZERO });
        SubspaceBasis { ambient, vectors, tag: tag.into() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn vectors(&self) -> &CMat {
        &self.vectors
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Largest distance from a unit vector of `other` to this subspace.
    pub fn containment_residual(&self, other: &SubspaceBasis) -> f64 {
        if other.dim() == 0 {
            return 0.0;
        }
        let v = &other.vectors;
        let off = v - &self.vectors * (self.vectors.adjoint() * v);
        (0..off.ncols()).map(|c| off.column(c).norm()).fold(0.0, f64::max)
    }
}

/// `E* = {s : sK in E}`.
pub fn saturate(space: &CosetSpace, e: &[usize]) -> Vec<usize> {
    space.saturate(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionSpace {
    Group,
    Cosets,
}

/// Functions vanishing on `e`, as a coordinate subspace.
pub fn vanishing_ideal(space: &CosetSpace, on: FunctionSpace, e: &[usize]) -> SubspaceBasis {
    let n = match on {
        FunctionSpace::Group => space.num_points(),
        FunctionSpace::Cosets => space.num_cosets(),
    };
    let support: Vec<usize> = (0..n).filter(|x| !e.contains(x)).collect();
    SubspaceBasis::coordinate(n, &support, format!("I({e:?})"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetMap {
    /// Functions on `G` to functions on `G/K`.
    Gamma,
    /// Functions on `G/K` to functions on `G`.
    N,
    /// Functions on `G` to right `K`-invariant functions on `G`.
    P,
}

pub fn apply_map_to_subspace(space: &CosetSpace, b: &SubspaceBasis, map: CosetMap) -> Result<SubspaceBasis> {
    let (expected, out_dim) = match map {
        CosetMap::Gamma => (space.num_points(), space.num_cosets()),
        CosetMap::N => (space.num_cosets(), space.num_points()),
        CosetMap::P => (space.num_points(), space.num_points()),
    };
    if b.ambient() != expected {
        return Err(Error::DimensionMismatch { expected, got: b.ambient() });
    }
    let mut image = CMat::zeros(out_dim, b.dim());
    for c in 0..b.dim() {
        let v: Vec<C64> = b.vectors().column(c).iter().copied().collect();
        let w = match map {
            CosetMap::Gamma => space.gamma(&v)?,
            CosetMap::N => space.lift_n(&v)?,
            CosetMap::P => space.project_p(&v)?,
        };
        image.set_column(c, &nalgebra::DVector::from_vec(w));
    }
    Ok(SubspaceBasis::from_spanning(&image, format!("{map:?} {}", b.tag())))
}

/// The ideal of the pointwise algebra `C^n` generated by `generators`:
/// spans of `{e_s g, g}` grown until the rank stops changing.
pub fn generated_ideal(generators: &SubspaceBasis) -> SubspaceBasis {
    let n = generators.ambient();
    let mut current = generators.clone();
    loop {
        let k = current.dim();
        let mut spanning = CMat::zeros(n, k * (n + 1));
        for c in 0..k {
            let g = current.vectors().column(c);
            spanning.set_column(c, &g);
            for s in 0..n {
                spanning[(s, k + c * n + s)] = g[s];
            }
        }
        let next = SubspaceBasis::from_spanning(&spanning, format!("ideal({})", generators.tag()));
        if next.dim() == current.dim() {
            return next;
        }
        current = next;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceComparison {
    pub equal: bool,
    pub dims: (usize, usize),
    /// Distance of `a`'s vectors from `span(b)`.
    pub a_in_b: f64,
    pub b_in_a: f64,
}

pub fn subspace_equal(a: &SubspaceBasis, b: &SubspaceBasis, tol: f64) -> Result<SubspaceComparison> {
    if a.ambient() != b.ambient() {
        return Err(Error::DimensionMismatch { expected: a.ambient(), got: b.ambient() });
    }
    let a_in_b = b.containment_residual(a);
    let b_in_a = a.containment_residual(b);
    let equal = a.dim() == b.dim() && a_in_b <= tol && b_in_a <= tol;
    Ok(SubspaceComparison { equal, dims: (a.dim(), b.dim()), a_in_b, b_in_a })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealSquareReport {
    pub dim_ideal: usize,
    pub dim_square: usize,
    pub equal: bool,
    pub residual: f64,
}

/// Compares `span(I(E) I(E))` with `I(E)` in the pointwise algebra on `G`.
/// They always agree at finite scale.
pub fn ideal_square_check(space: &CosetSpace, on: FunctionSpace, e: &[usize], tol: f64) -> Result<IdealSquareReport> {
    let ideal = vanishing_ideal(space, on, e);
    let (n, k) = (ideal.ambient(), ideal.dim());
    let v = ideal.vectors();
    let mut products = CMat::zeros(n, k * k);
    for a in 0..k {
        for b in 0..k {
            products.set_column(a * k + b, &v.column(a).component_mul(&v.column(b)));
        }
    }
    let square = SubspaceBasis::from_spanning(&products, "I^2");
    let cmp = subspace_equal(&ideal, &square, tol)?;
    Ok(IdealSquareReport {
        dim_ideal: ideal.dim(),
        dim_square: square.dim(),
        equal: cmp.equal,
        residual: cmp.a_in_b.max(cmp.b_in_a),
    })
}

/// One `(G, K, E)` check of the ideal correspondence.
#[derive(Clone, Debug, Serialize)]
pub struct IdealCase {
    pub group: String,
    pub subgroup: Vec<usize>,
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    /// `[dim I(E), dim I(E*), dim Gamma I(E*), dim <N I(E)>]`.
    pub dims: [usize; 4],
    /// `[Gamma I(E*) vs I(E), <N I(E)> vs I(E*), N I(E) outside I(E*)]`.
    pub residuals: [f64; 3],
    pub pass: bool,
}

pub fn ideal_correspondence(space: &CosetSpace, e: &[usize], tol: f64) -> Result<IdealCase> {
    let e_star = space.saturate(e);
    let on_cosets = vanishing_ideal(space, FunctionSpace::Cosets, e);
    let on_group = vanishing_ideal(space, FunctionSpace::Group, &e_star);
    let pushed = apply_map_to_subspace(space, &on_group, CosetMap::Gamma)?;
    let lifted = apply_map_to_subspace(space, &on_cosets, CosetMap::N)?;
    let generated = generated_ideal(&lifted);
    let first = subspace_equal(&pushed, &on_cosets, tol)?;
    let second = subspace_equal(&generated, &on_group, tol)?;
    let contained = on_group.containment_residual(&lifted);
    let subgroup = space.subgroup().member_indices()?;
    Ok(IdealCase {
        group: space.group().name(),
        subgroup,
        e: e.to_vec(),
        dims: [on_cosets.dim(), on_group.dim(), pushed.dim(), generated.dim()],
        residuals: [first.a_in_b.max(first.b_in_a), second.a_in_b.max(second.b_in_a), contained],
        pass: first.equal && second.equal && contained <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupModel, SubgroupModel};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s3_mod_12() -> CosetSpace {
        let g = GroupModel::named("s3", 0).unwrap();
        CosetSpace::new(&SubgroupModel::finite(&g, vec![0, 1]).unwrap()).unwrap()
    }

    #[test]
    fn vanishing_dimensions() {
        let space = s3_mod_12();
        assert_eq!(vanishing_ideal(&space, FunctionSpace::Cosets, &[]).dim(), 3);
        assert_eq!(vanishing_ideal(&space, FunctionSpace::Cosets, &[0]).dim(), 2);
        assert_eq!(vanishing_ideal(&space, FunctionSpace::Group, &saturate(&space, &[0])).dim(), 4);
        let z2 = GroupModel::named("z2", 0).unwrap();
        let trivial = CosetSpace::new(&SubgroupModel::finite(&z2, vec![0]).unwrap()).unwrap();
        assert_eq!(vanishing_ideal(&trivial, FunctionSpace::Group, &[1]).dim(), 1);
    }

    #[test]
    fn zero_and_full_subspaces() {
        let space = s3_mod_12();
        let zero = SubspaceBasis::zero(6, "0");
        assert_eq!(apply_map_to_subspace(&space, &zero, CosetMap::Gamma).unwrap().dim(), 0);
        assert_eq!(generated_ideal(&zero).dim(), 0);
        let full = vanishing_ideal(&space, FunctionSpace::Group, &[]);
        assert_eq!(generated_ideal(&full).dim(), 6);
        assert!(subspace_equal(&full, &full, 1e-12).unwrap().equal);
        assert!(!subspace_equal(&full, &zero, 1e-12).unwrap().equal);
        let wrong = SubspaceBasis::zero(3, "0");
        assert!(apply_map_to_subspace(&space, &wrong, CosetMap::Gamma).is_err());
    }

    #[test]
    fn generated_ideal_of_lifted_ideal() {
        let space = s3_mod_12();
        let lifted = apply_map_to_subspace(&space, &vanishing_ideal(&space, FunctionSpace::Cosets, &[0]), CosetMap::N).unwrap();
        assert_eq!(lifted.dim(), 2);
        assert_eq!(generated_ideal(&lifted).dim(), 4);
        let case = ideal_correspondence(&space, &[0], 1e-10).unwrap();
        assert!(case.pass, "{case:?}");
    }

    #[test]
    fn two_bases_of_one_random_subspace() {
        // projector oracle: equal subspaces have equal orthogonal projectors
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut rand_mat = |r, c| CMat::from_fn(r, c, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let span = rand_mat(7, 3);
        let mix = rand_mat(3, 3);
        let a = SubspaceBasis::from_spanning(&span, "a");
        let b = SubspaceBasis::from_spanning(&(&span * mix), "b");
        let pa = a.vectors() * a.vectors().adjoint();
        let pb = b.vectors() * b.vectors().adjoint();
        assert!(linalg::max_abs_diff(&pa, &pb) < 1e-10);
        assert!(subspace_equal(&a, &b, 1e-10).unwrap().equal);
    }

    #[test]
    fn squares_are_equal_at_finite_scale() {
        let q8 = GroupModel::named("q8", 0).unwrap();
        let center = CosetSpace::new(&SubgroupModel::finite(&q8, vec![0, 1]).unwrap()).unwrap();
        let report = ideal_square_check(&center, FunctionSpace::Cosets, &[0], 1e-10).unwrap();
        assert_eq!((report.dim_ideal, report.dim_square), (3, 3));
        assert!(report.equal);
        assert!(ideal_square_check(&center, FunctionSpace::Group, &[], 1e-10).unwrap().equal);
    }
}
