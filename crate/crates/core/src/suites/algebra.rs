use rand::Rng;

use super::{factor_groups, random_poly, rel, rng, Outcome, SuiteConfig, Tally};
use crate::coset::{haar_swap_integral, lift_n, lift_n_check, tnorm_identity_check};
use crate::group::IrrepLabel;
use crate::linalg::{self, CMat, C64, ZERO};
use crate::trig::{
    algebra_norm, convolve, evaluate, random_sampled, schatten_norm, transform_by_quadrature, translate,
    AlgebraNormKind, FinitePlan, Schatten, Side, TrigPoly,
};
use crate::Result;

const NORM_KINDS: [AlgebraNormKind; 4] =
    [AlgebraNormKind::A, AlgebraNormKind::ADelta(1), AlgebraNormKind::ADelta(2), AlgebraNormKind::AGamma];

/// `integral pi_ij(s) conj(sigma_kl(s)) ds = delta delta delta / d`.
pub(super) fn orthogonality(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut finite = Tally::new(cfg, "orthogonality, finite groups (exhaustive)", 1e-12);
    let mut continuous = Tally::new(cfg, "orthogonality, continuous groups (quadrature)", 1e-9);
    for g in factor_groups(&cfg.group) {
        let labels = g.enumerate_irreps();
        let nodes = g.quadrature(2 * g.max_degree());
        let mats: Vec<Vec<CMat>> = labels
            .iter()
            .map(|l| nodes.iter().map(|(s, _)| g.irrep_matrix(l, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let tally = if g.is_finite() { &mut finite } else { &mut continuous };
        for (a, ma) in mats.iter().enumerate() {
            for (b, mb) in mats.iter().enumerate() {
                let (da, db) = (ma[0].nrows(), mb[0].nrows());
                let mut acc = CMat::zeros(da * db, da * db);
                for ((pa, pb), (_, w)) in ma.iter().zip(mb).zip(&nodes) {
                    acc += linalg::kron(pa, &linalg::conj(pb)) * C64::new(*w, 0.0);
                }
                // entry ((i, k), (j, l)) is integral pi_ij conj(sigma_kl)
                let want = CMat::from_fn(da * db, da * db, |r, c| {
                    let (i, k, j, l) = (r / db, r % db, c / db, c % db);
                    if a == b && i == k && j == l { C64::new(1.0 / da as f64, 0.0) } else { ZERO }
                });
                tally.record(linalg::max_abs_diff(&acc, &want));
            }
        }
    }
    Ok(Outcome::checks([finite, continuous].into_iter().filter(|t| t.cases > 0).collect()))
}

/// Block norms of the lifted function against `||f^||_2 / sqrt(d)`, and
/// vanishing of every pair block other than `alpha x conj(alpha)`.
pub(super) fn tnormcoeff(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    let labels = g.enumerate_irreps();
    let mut rng = rng(cfg);
    let mut lifted = Tally::new(cfg, "||N^f(a x conj a)||_p = ||f^(a)||_2 / sqrt(d), p = 1, 2, inf", 1e-9);
    let mut off = Tally::new(cfg, "pair blocks off the conjugate diagonal vanish", 1e-12);
    let mut agree = Tally::new(cfg, "lifted coefficients match the brute-force transform of f(s t^-1)", 1e-12);

    let matched = |pair: &IrrepLabel| -> Result<bool> {
        let (a, b) = pair.factors().expect("pair label");
        Ok(g.canonical_form(&a.conj())?.0 == g.canonical_form(b)?.0)
    };

    if g.is_finite() {
        let plan = FinitePlan::new(g)?;
        let plan2 = FinitePlan::new(&g.squared())?;
        let elements = g.elements().expect("finite");
        let st_inv: Vec<usize> = elements
            .iter()
            .flat_map(|s| elements.iter().map(move |t| (s, t)))
            .map(|(s, t)| g.element_index(&g.multiply(s, &g.inverse(t)?)?))
            .collect::<Result<_>>()?;
        for _ in 0..cfg.samples {
            let f = random_poly(g, &labels, &mut rng, false)?;
            record_lifted(&f, &mut lifted)?;
            let values = plan.evaluate(&f)?;
            let brute = plan2.transform(&st_inv.iter().map(|&x| values[x]).collect::<Vec<_>>())?;
            for label in plan2.group().enumerate_irreps() {
                if !matched(&label)? {
                    off.record(brute.coeff(&label).map_or(0.0, linalg::max_abs));
                }
            }
            agree.record(lift_n(&f)?.max_abs_diff(&brute)?);
        }
    } else {
        // N^f(a x b) = [f^(a) (x) I] J(a, b) with J(a, b) = integral conj(a) (x) conj(b),
        // so off-diagonal blocks vanish with J.
        let nodes = g.quadrature(2 * g.max_degree());
        let mut js = Vec::new();
        for a in &labels {
            for b in &labels {
                if matched(&IrrepLabel::pair(a.clone(), b.clone()))? {
                    continue;
                }
                let (da, db) = (g.irrep_dim(a)?, g.irrep_dim(b)?);
                let mut j = CMat::zeros(da * db, da * db);
                for (t, w) in &nodes {
                    let (ma, mb) = (g.irrep_matrix(a, t)?, g.irrep_matrix(b, t)?);
                    j += linalg::kron(&linalg::conj(&ma), &linalg::conj(&mb)) * C64::new(*w, 0.0);
                }
                js.push((a.clone(), db, j));
            }
        }
        for _ in 0..cfg.samples {
            let f = random_poly(g, &labels, &mut rng, false)?;
            record_lifted(&f, &mut lifted)?;
            for (a, db, j) in &js {
                let fa = f.coeff(a).cloned().unwrap_or_else(|| CMat::zeros(j.nrows() / db, j.nrows() / db));
                off.record(linalg::max_abs(&(linalg::kron(&fa, &linalg::identity(*db)) * j)));
            }
        }
    }
    let mut tallies = vec![lifted, off];
    if agree.cases > 0 {
        tallies.push(agree);
    }
    Ok(Outcome::checks(tallies))
}

fn record_lifted(f: &TrigPoly, tally: &mut Tally) -> Result<()> {
    for p in Schatten::ALL {
        for row in tnorm_identity_check(f, p)? {
            tally.record(row.residual);
        }
    }
    Ok(())
}

/// The inclusion chain on random polys and the `sqrt(d)` gap on `pi_11`.
pub(super) fn norms(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    let labels = g.enumerate_irreps();
    let mut rng = rng(cfg);
    let mut chain = Tally::new(cfg, "A <= ADelta(1) <= AGamma <= ADelta(2) <= ADelta(3) <= ADelta(4)", 1e-12);
    for _ in 0..cfg.samples {
        let f = random_poly(g, &labels, &mut rng, false)?;
        let n = |k| algebra_norm(&f, k);
        let seq = [
            n(AlgebraNormKind::A)?,
            n(AlgebraNormKind::ADelta(1))?,
            n(AlgebraNormKind::AGamma)?,
            n(AlgebraNormKind::ADelta(2))?,
            n(AlgebraNormKind::ADelta(3))?,
            n(AlgebraNormKind::ADelta(4))?,
        ];
        let worst = seq.windows(2).map(|w| (w[0] - w[1]).max(0.0)).fold(0.0, f64::max);
        chain.record(worst / seq[5].max(1.0));
    }
    let mut witness = Tally::new(cfg, "ADelta(1) / A = sqrt(d) on pi_11", 1e-10);
    for label in &labels {
        let p = TrigPoly::matrix_coefficient(g, label, 0, 0)?;
        let ratio = algebra_norm(&p, AlgebraNormKind::ADelta(1))? / algebra_norm(&p, AlgebraNormKind::A)?;
        witness.record((ratio - (g.irrep_dim(label)? as f64).sqrt()).abs());
    }
    Ok(Outcome::checks(vec![chain, witness]))
}

/// Central polys have equal `A` and `ADelta(1)` norms.
pub(super) fn central(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    let labels = g.enumerate_irreps();
    let mut rng = rng(cfg);
    let mut eq = Tally::new(cfg, "A = ADelta(1) on central polys (relative)", 1e-12);
    for _ in 0..cfg.samples {
        let f = random_poly(g, &labels, &mut rng, true)?;
        let a = algebra_norm(&f, AlgebraNormKind::A)?;
        let ad = algebra_norm(&f, AlgebraNormKind::ADelta(1))?;
        eq.record((a - ad).abs() / a.max(f64::MIN_POSITIVE));
    }
    Ok(Outcome::checks(vec![eq]))
}

/// Coefficientwise convolution against direct group convolution, the trace
/// norm of the untwisted lift, and the swap integral.
pub(super) fn conv_theorem(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    let labels = g.enumerate_irreps();
    let mut rng = rng(cfg);
    let mut conv = if g.is_finite() {
        Tally::new(cfg, "coefficient convolution = direct convolution (exhaustive)", 1e-12)
    } else {
        Tally::new(cfg, "coefficient convolution = direct convolution (quadrature)", 1e-10)
    };
    if g.is_finite() {
        let plan = FinitePlan::new(g)?;
        let elements = g.elements().expect("finite");
        let n = elements.len();
        // tinv_s[t][s] = index of t^-1 s
        let tinv_s: Vec<Vec<usize>> = elements
            .iter()
            .map(|t| {
                let ti = g.inverse(t)?;
                elements.iter().map(|s| g.element_index(&g.multiply(&ti, s)?)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for _ in 0..cfg.samples {
            let f = random_sampled(g, rng.gen())?;
            let h = random_sampled(g, rng.gen())?;
            let direct: Vec<C64> = (0..n)
                .map(|s| (0..n).map(|t| f.values()[t] * h.values()[tinv_s[t][s]]).sum::<C64>() / n as f64)
                .collect();
            let fh = convolve(&plan.transform(f.values())?, &plan.transform(h.values())?)?;
            let via = plan.evaluate(&fh)?;
            conv.record(direct.iter().zip(&via).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
        }
    } else {
        let degree = 2 * g.max_degree();
        for _ in 0..cfg.continuous_samples() {
            let f = random_poly(g, &labels, &mut rng, false)?;
            let h = random_poly(g, &labels, &mut rng, false)?;
            let fh = convolve(&f, &h)?;
            let s = g.random_element(&mut rng);
            let direct = g.integrate(degree, |t| {
                let v = g.multiply(&g.inverse(t).expect("valid"), &s).expect("valid");
                evaluate(&f, t).expect("in range") * evaluate(&h, &v).expect("in range")
            });
            let via = evaluate(&fh, &s)?;
            conv.record((direct - via).norm() / via.norm().max(1.0));
        }
    }

    let mut trace = Tally::new(cfg, "||Ncheck^f(a x a)||_1 = ||f^(a)||_1", 1e-12);
    for _ in 0..cfg.samples {
        let f = random_poly(g, &labels, &mut rng, false)?;
        let lifted = lift_n_check(&f)?;
        for (a, fa) in f.coeffs() {
            let block = lifted.coeff(&IrrepLabel::pair(a.clone(), a.clone())).expect("lifted label");
            trace.record(rel(schatten_norm(block, Schatten::One), schatten_norm(fa, Schatten::One)));
        }
    }

    let mut swap = Tally::new(cfg, "d * integral pi(t^-1) (x) pi(t) dt = U", 1e-12);
    for h in factor_groups(g) {
        for label in h.enumerate_irreps() {
            let d = h.irrep_dim(&label)?;
            swap.record(linalg::max_abs_diff(&haar_swap_integral(&h, &label)?, &crate::coset::swap_unitary(d).matrix));
        }
    }
    Ok(Outcome::checks(vec![conv, trace, swap]))
}

/// Fourier inversion and translation invariance of the algebra norms.
pub(super) fn roundtrip(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = &cfg.group;
    let labels = g.enumerate_irreps();
    let mut rng = rng(cfg);
    let mut tallies = Vec::new();
    if g.is_finite() {
        let plan = FinitePlan::new(g)?;
        let mut forward = Tally::new(cfg, "inverse(transform(f)) = f on samples", 1e-12);
        let mut backward = Tally::new(cfg, "transform(inverse(p)) = p on coefficients", 1e-12);
        for _ in 0..cfg.samples {
            let f = random_sampled(g, rng.gen())?;
            let back = plan.evaluate(&plan.transform(f.values())?)?;
            forward.record(f.values().iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
            let p = random_poly(g, &labels, &mut rng, false)?;
            backward.record(plan.transform(&plan.evaluate(&p)?)?.max_abs_diff(&p)?);
        }
        tallies.extend([forward, backward]);
    } else {
        let mut quad = Tally::new(cfg, "quadrature transform recovers coefficients", 1e-10);
        for _ in 0..cfg.continuous_samples() {
            let p = random_poly(g, &labels, &mut rng, false)?;
            let back = transform_by_quadrature(g, 2 * g.max_degree(), &labels, |s| evaluate(&p, s).expect("in range"))?;
            quad.record(back.max_abs_diff(&p)?);
        }
        tallies.push(quad);
    }
    let mut invariance = Tally::new(cfg, "algebra norms are translation invariant (relative)", 1e-12);
    for _ in 0..cfg.samples {
        let p = random_poly(g, &labels, &mut rng, false)?;
        let s = g.random_element(&mut rng);
        for side in [Side::Left, Side::Right] {
            let moved = translate(&p, side, &s)?;
            for kind in NORM_KINDS {
                let (a, b) = (algebra_norm(&p, kind)?, algebra_norm(&moved, kind)?);
                invariance.record((a - b).abs() / a.max(f64::MIN_POSITIVE));
            }
        }
    }
    tallies.push(invariance);
    Ok(Outcome::checks(tallies))
}
