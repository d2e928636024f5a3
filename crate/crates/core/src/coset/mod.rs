//! Coset spaces `G/K` and the maps between functions on `G` and on `G/K`.
//!
//! `P` averages over right translates by `K`, `N` pulls a coset function back
//! to `G`, and `Gamma = M P` pushes a function on `G` down to `G/K`. For the
//! diagonal `K = {(t, t)}` in `G x G`, the coset of `(s, t)` is identified with
//! `s t^-1` in `G`; [`maps`] gives the coefficient-level forms of these maps.

pub mod maps;

pub use maps::{
    gamma_conv, gamma_twisted, haar_swap_integral, haar_tensor_integral, lift_n, lift_n_check, rank1_projector,
    swap_unitary, tnorm_identity_check, Rank1Projector, SwapUnitary, TnormRow,
};

use crate::group::{Element, GroupModel, SubgroupModel};
use crate::linalg::C64;
use crate::trig::{fourier_transform, inverse_transform, SampledFunction, TrigPoly};
use crate::{Error, Result};

/// Left cosets of a subgroup of a finite model.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    group: GroupModel,
    subgroup: SubgroupModel,
    /// `right[s][m]` is the index of `s k_m`.
    right: Vec<Vec<usize>>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    cosets: Vec<Vec<usize>>,
}

impl CosetSpace {
    /// Representatives are the smallest element index of each coset, except
    /// for the diagonal, where `(s, e)` represents the coset of `s`.
    pub fn new(subgroup: &SubgroupModel) -> Result<Self> {
        let group = subgroup.parent().clone();
        let elements = group
            .elements()
            .ok_or_else(|| Error::Unsupported("coset spaces of a continuous group".into()))?;
        let members = subgroup.member_indices()?;
        let member_elements: Vec<Element> = members.iter().map(|&m| elements[m].clone()).collect();
        let right = elements
            .iter()
            .map(|s| {
                member_elements
                    .iter()
                    .map(|k| group.element_index(&group.multiply(s, k)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let starts: Vec<usize> = match (subgroup, group.factors()) {
            (SubgroupModel::Diagonal { .. }, Some((g, _))) => {
                let e = g.identity();
                g.elements()
                    .expect("finite factor")
                    .into_iter()
                    .map(|s| group.element_index(&Element::pair(s, e.clone())))
                    .collect::<Result<_>>()?
            }
            _ => (0..elements.len()).collect(),
        };
        let mut coset_of = vec![usize::MAX; elements.len()];
        let (mut reps, mut cosets) = (Vec::new(), Vec::new());
        for s in starts {
            if coset_of[s] != usize::MAX {
                continue;
            }
            let mut coset = right[s].clone();
            coset.sort_unstable();
            for &x in &coset {
                coset_of[x] = reps.len();
            }
            reps.push(s);
            cosets.push(coset);
        }
        debug_assert!(coset_of.iter().all(|&c| c != usize::MAX));
        Ok(CosetSpace { group, subgroup: subgroup.clone(), right, reps, coset_of, cosets })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn subgroup(&self) -> &SubgroupModel {
        &self.subgroup
    }

    pub fn num_points(&self) -> usize {
        self.coset_of.len()
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, s: usize) -> usize {
        self.coset_of[s]
    }

    pub fn coset(&self, c: usize) -> &[usize] {
        &self.cosets[c]
    }

    /// `E* = {s : sK in E}`, sorted.
    pub fn saturate(&self, e: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = e.iter().flat_map(|&c| self.cosets[c].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn check_len(&self, v: &[C64], n: usize) -> Result<()> {
        if v.len() == n { Ok(()) } else { Err(Error::DimensionMismatch { expected: n, got: v.len() }) }
    }

    /// `Pw(s) = mean_k w(sk)`.
    pub fn project_p(&self, w: &[C64]) -> Result<Vec<C64>> {
        self.check_len(w, self.num_points())?;
        let k = self.right[0].len() as f64;
        Ok(self.right.iter().map(|row| row.iter().map(|&x| w[x]).sum::<C64>() / k).collect())
    }

    /// `Gamma w(cK) = mean_k w(rep_c k)`.
    pub fn gamma(&self, w: &[C64]) -> Result<Vec<C64>> {
        self.check_len(w, self.num_points())?;
        let k = self.right[0].len() as f64;
        Ok(self.reps.iter().map(|&r| self.right[r].iter().map(|&x| w[x]).sum::<C64>() / k).collect())
    }

    /// `Nf(s) = f(sK)`.
    pub fn lift_n(&self, f: &[C64]) -> Result<Vec<C64>> {
        self.check_len(f, self.num_cosets())?;
        Ok(self.coset_of.iter().map(|&c| f[c]).collect())
    }
}

/// Right `K`-average of a function on a finite model. Continuous models are
/// handled only through the coefficient maps.
pub fn project_p(w: &TrigPoly, k: &SubgroupModel) -> Result<TrigPoly> {
    if k.parent() != w.group() {
        return Err(Error::GroupMismatch);
    }
    if !w.group().is_finite() {
        return Err(Error::Unsupported(format!("standalone P on {}", w.group().name())));
    }
    let space = CosetSpace::new(k)?;
    let samples = inverse_transform(w)?;
    let averaged = space.project_p(samples.values())?;
    fourier_transform(&SampledFunction::new(w.group(), averaged)?)
}
