use serde_json::json;

use super::{low_labels, random_poly, rel, rng, Outcome, SuiteConfig, Tally};
use crate::coset::{gamma_conv, gamma_twisted, lift_n, lift_n_check, CosetSpace};
use crate::experiments::{ideal_correspondence, ideal_square_check, point_derivation, FunctionSpace};
use crate::group::subgroup::all_subgroups;
use crate::group::{Element, GroupModel, IrrepLabel, SubgroupModel};
use crate::trig::{
    algebra_norm, check_involution, convolve, evaluate, multiply, schatten_norm, supports_multiply, tensor, AlgebraNormKind,
    FinitePlan, Schatten, TrigPoly,
};
use crate::Result;

/// Pointwise product through a cached plan on finite models.
fn product(plan: Option<&FinitePlan>, a: &TrigPoly, b: &TrigPoly) -> Result<TrigPoly> {
    match plan {
        Some(plan) => {
            let (x, y) = (plan.evaluate(a)?, plan.evaluate(b)?);
            plan.transform(&x.iter().zip(&y).map(|(p, q)| p * q).collect::<Vec<_>>())
        }
        None => multiply(a, b),
    }
}

/// `Sum d^(3/2) ||f^||_2` straight from the coefficients.
fn adelta_by_hand(f: &TrigPoly) -> Result<f64> {
    let f = f.canonical()?;
    Ok(f.coeffs().values().map(|m| (m.nrows() as f64).powf(1.5) * schatten_norm(m, Schatten::Two)).sum())
}

pub(super) fn coset_maps(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    let g2 = g.squared();
    let labels = g.enumerate_irreps();
    let mut rng = rng(cfg);
    let tol = 1e-10;
    let mut gamma_n = Tally::new(cfg, "gamma(N f) = f", tol);
    let mut gamma_nc = Tally::new(cfg, "gammacheck(Ncheck f) = f", tol);
    let mut n_point = Tally::new(cfg, "N f (s, t) = f(s t^-1) pointwise", tol);
    let mut nc_point = Tally::new(cfg, "Ncheck f (s, t) = f(st) pointwise", tol);
    let mut twisted = Tally::new(cfg, "gamma(f x g) = f * g(.^-1)", tol);
    let mut plain = Tally::new(cfg, "gammacheck(f x g) = f * g", tol);
    let mut isometry = Tally::new(cfg, "||N f||_A(GxG) = sum d^(3/2) ||f^||_2 (relative)", tol);
    let mut expectation = Tally::new(cfg, "gamma(w . N f) = gamma(w) . f", tol);
    let mut homomorphism = Tally::new(cfg, "gamma(N f . N g) = f . g", tol);

    let (plan, plan2) = if g.is_finite() { (Some(FinitePlan::new(g)?), Some(FinitePlan::new(&g2)?)) } else { (None, None) };
    for _ in 0..cfg.samples {
        let f = random_poly(g, &labels, &mut rng, false)?;
        let h = random_poly(g, &labels, &mut rng, false)?;
        let nf = lift_n(&f)?;
        let ncf = lift_n_check(&f)?;
        gamma_n.record(gamma_twisted(&nf)?.max_abs_diff(&f)?);
        gamma_nc.record(gamma_conv(&ncf)?.max_abs_diff(&f)?);
        let fh = tensor(&f, &h);
        twisted.record(gamma_twisted(&fh)?.max_abs_diff(&convolve(&f, &check_involution(&h)?)?)?);
        plain.record(gamma_conv(&fh)?.max_abs_diff(&convolve(&f, &h)?)?);
        isometry.record(rel(algebra_norm(&nf, AlgebraNormKind::A)?, adelta_by_hand(&f)?));

        match (&plan, &plan2) {
            (Some(plan), Some(plan2)) => {
                let values = plan.evaluate(&f)?;
                let (nv, ncv) = (plan2.evaluate(&nf)?, plan2.evaluate(&ncf)?);
                let elements = g.elements().expect("finite");
                let n = elements.len();
                for (si, s) in elements.iter().enumerate() {
                    for (ti, t) in elements.iter().enumerate() {
                        let a = g.element_index(&g.multiply(s, &g.inverse(t)?)?)?;
                        let b = g.element_index(&g.multiply(s, t)?)?;
                        n_point.record((nv[si * n + ti] - values[a]).norm());
                        nc_point.record((ncv[si * n + ti] - values[b]).norm());
                    }
                }
            }
            _ => {
                for _ in 0..5 {
                    let (s, t) = (g.random_element(&mut rng), g.random_element(&mut rng));
                    let pair = Element::pair(s.clone(), t.clone());
                    let want = evaluate(&f, &g.multiply(&s, &g.inverse(&t)?)?)?;
                    n_point.record((evaluate(&nf, &pair)? - want).norm() / want.norm().max(1.0));
                    let want = evaluate(&f, &g.multiply(&s, &t)?)?;
                    nc_point.record((evaluate(&ncf, &pair)? - want).norm() / want.norm().max(1.0));
                }
            }
        }
    }

    // products need room under the cutoff on continuous models; mixed
    // finite x continuous models have no pointwise product
    let pairs = if g.is_finite() {
        cfg.samples / 2
    } else if supports_multiply(g) {
        cfg.continuous_samples()
    } else {
        0
    };
    let low = low_labels(g);
    let low2 = low_labels(&g2);
    for _ in 0..pairs {
        let f = random_poly(g, &low, &mut rng, false)?;
        let h = random_poly(g, &low, &mut rng, false)?;
        let w = random_poly(&g2, &low2, &mut rng, false)?;
        let nf = lift_n(&f)?;
        let lhs = gamma_twisted(&product(plan2.as_ref(), &w, &nf)?)?;
        let rhs = product(plan.as_ref(), &gamma_twisted(&w)?, &f)?;
        expectation.record(lhs.max_abs_diff(&rhs)?);
        let lhs = gamma_twisted(&product(plan2.as_ref(), &nf, &lift_n(&h)?)?)?;
        homomorphism.record(lhs.max_abs_diff(&product(plan.as_ref(), &f, &h)?)?);
    }
    let mut tallies = vec![gamma_n, gamma_nc, n_point, nc_point, twisted, plain, isometry];
    if supports_multiply(g) {
        tallies.extend([expectation, homomorphism]);
    }
    Ok(Outcome::checks(tallies))
}

/// Every nontrivial proper subgroup and every set of at most two cosets.
pub(super) fn ideals(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    if !g.is_finite() {
        return Ok(Outcome::skipped(format!("ideal correspondence needs a finite group, got {}", g.name())));
    }
    let order = g.order().expect("finite");
    let mut subgroups: Vec<Vec<usize>> =
        all_subgroups(g)?.into_iter().filter(|k| k.len() > 1 && k.len() < order).collect();
    if subgroups.is_empty() {
        subgroups.push(vec![g.element_index(&g.identity())?]);
    }
    let tol = cfg.tol.unwrap_or(1e-10);
    let mut image = Tally::new(cfg, "gamma I(E*) = I(E)", tol);
    let mut generated = Tally::new(cfg, "ideal generated by N I(E) = I(E*)", tol);
    let mut contained = Tally::new(cfg, "N I(E) inside I(E*)", tol);
    let mut dims = Tally::new(cfg, "dimension mismatches", 0.0);
    let mut square = Tally::new(cfg, "I(E)^2 = I(E) on G/K", tol);
    let mut details = Vec::new();
    for members in subgroups {
        let space = CosetSpace::new(&SubgroupModel::finite(g, members)?)?;
        let m = space.num_cosets();
        let mut sets: Vec<Vec<usize>> = vec![vec![]];
        sets.extend((0..m).map(|a| vec![a]));
        sets.extend((0..m).flat_map(|a| (a + 1..m).map(move |b| vec![a, b])));
        for e in sets {
            let case = ideal_correspondence(&space, &e, tol)?;
            let [d_e, d_star, d_image, d_generated] = case.dims;
            dims.record(((d_image != d_e) as usize + (d_generated != d_star) as usize) as f64);
            image.record(case.residuals[0]);
            generated.record(case.residuals[1]);
            contained.record(case.residuals[2]);
            square.record(ideal_square_check(&space, FunctionSpace::Cosets, &e, tol)?.residual);
            details.push(serde_json::to_value(&case)?);
        }
    }
    Ok(Outcome::checks(vec![image, generated, contained, dims, square]).with_details(details))
}

/// The point derivation at `e` on SU(2).
pub(super) fn derivation(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    let GroupModel::Su2 { two_j_max } = g else {
        return Ok(Outcome::skipped(format!("point derivation is defined on su2, got {}", g.name())));
    };
    let mut rng = rng(cfg);
    let tol = 1e-10;
    let mut bound = Tally::new(cfg, "|d(f)| <= ADelta(2)(f)", tol);
    let mut taylor = Tally::new(cfg, "forward differences within the Taylor bound at h = 1e-3, 1e-4, 1e-5", tol);
    let mut leibniz = Tally::new(cfg, "d(fg) = f(e) d(g) + g(e) d(f) (relative)", tol);
    let mut augmentation = Tally::new(cfg, "d(fg) = 0 when f(e) = g(e) = 0 (relative)", tol);
    let mut ratio_a = Tally::new(cfg, "|d| / A = 2j on pi^j_11", tol);
    let mut ratio_ad2 = Tally::new(cfg, "|d| / ADelta(2) <= 1 on pi^j_11", tol);

    let labels: Vec<IrrepLabel> = (0..=(*two_j_max).min(6)).map(IrrepLabel::spin).collect();
    let samples = 2 * cfg.samples;
    for _ in 0..samples {
        let f = random_poly(g, &labels, &mut rng, false)?;
        let r = point_derivation(&f)?;
        bound.record((r.value().norm() - r.bound).max(0.0));
        for fd in &r.finite_differences {
            taylor.record((fd.error - fd.allowed).max(0.0));
        }
    }
    let low = super::low_labels(g);
    let e = g.identity();
    let d = |p: &TrigPoly| point_derivation(p).map(|r| r.value());
    for _ in 0..cfg.samples / 2 {
        let f = random_poly(g, &low, &mut rng, false)?;
        let h = random_poly(g, &low, &mut rng, false)?;
        let (fe, he) = (evaluate(&f, &e)?, evaluate(&h, &e)?);
        let (df, dh) = (d(&f)?, d(&h)?);
        let rhs = fe * dh + he * df;
        let scale = (fe * dh).norm() + (he * df).norm();
        leibniz.record((d(&multiply(&f, &h)?)? - rhs).norm() / scale.max(1.0));

        let f0 = f.sub(&TrigPoly::constant(g, fe))?;
        let h0 = h.sub(&TrigPoly::constant(g, he))?;
        let scale = d(&f0)?.norm() * d(&h0)?.norm();
        augmentation.record(d(&multiply(&f0, &h0)?)?.norm() / scale.max(1.0));
    }
    let mut details = Vec::new();
    for tj in 1..=*two_j_max {
        let p = TrigPoly::matrix_coefficient(g, &IrrepLabel::spin(tj), 0, 0)?;
        let dv = d(&p)?.norm();
        let over_a = dv / algebra_norm(&p, AlgebraNormKind::A)?;
        let over_ad2 = dv / algebra_norm(&p, AlgebraNormKind::ADelta(2))?;
        ratio_a.record((over_a - tj as f64).abs());
        ratio_ad2.record((over_ad2 - 1.0).max(0.0));
        details.push(json!({ "two_j": tj, "d_over_a": over_a, "d_over_adelta2": over_ad2 }));
    }
    Ok(Outcome::checks(vec![bound, taylor, leibniz, augmentation, ratio_a, ratio_ad2]).with_details(details))
}
