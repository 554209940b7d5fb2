//! Registry of reproducible claims, each tied to one acceptance criterion.
//!
//! Two claims evaluate statements exactly as originally given and are
//! expected to fail (`w-mixture-as-stated`, `twirl-w-as-stated`); each has a
//! corrected companion that passes. Their notes say why.

use std::f64::consts::{FRAC_PI_2, PI};

use entactic_core::catalog::{
    ame_4_3, cluster_state, four_qubit_phi, fully_supported_example, ghz, ghz_minus, psi_ghz_plus,
    psi_w, w_robustness_mixer, w_robustness_mixture, w_state,
};
use entactic_core::conversion::{
    bisect_threshold, bs_mixer_for, build_filter_map, certificate_from_bounds,
    ghz_plus_robustness_bound, ghz_to_any_bsp, max_probability, verify_preservation_sampled,
    w_class_filter_bound, ConversionOptions, FreeMixer, PreparationMap, RobustnessBound, Theory,
    GHZ_PLUS_DETERMINISTIC_C,
};
use entactic_core::ghz_symmetric::{
    fs_mixers_at_weight, params_to_density, symmetric_robustness_exact, twirl, twirl_pure,
    unique_fs_mixer_for_ghz, unique_fs_mixer_for_ghz_exact, ExactGhzParams, GhzSymmetricParams,
};
use entactic_core::linalg::{
    max_abs_diff, min_eigenvalue, partial_transpose, reduced_pure, Bipartition, DensityMatrix,
    Parties,
};
use entactic_core::measures::{
    dicke_mix_exact, fs_certificate, geometric_bs, geometric_fs, robustness_bipartite_pure,
    robustness_bs_upper, robustness_fs_upper_via_mix, DickeWeights, FsCertifierOptions, MixOptions,
    OptimizerOptions,
};
use entactic_core::random::{derive_seed, random_state, random_unit_vector, rng_from_seed};
use entactic_core::witness::{
    ghz_robustness_witness, ghz_witness_value_exact, ghz_witness_vertex_values,
    robustness_lower_from_witness, symmetric_triform_value, w_robustness_witness,
    w_witness_value_exact, witness_range_over_fs,
};
use entactic_core::Result;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::report::{Check, Outcome};

pub struct Claim {
    pub id: &'static str,
    /// Acceptance criterion, `AC-1` to `AC-13`.
    pub criterion: &'static str,
    pub description: &'static str,
    pub run: fn(u64, &mut Outcome) -> Result<()>,
}

const GRID: [(usize, usize); 4] = [(3, 2), (4, 2), (3, 3), (4, 3)];

/// Per-claim seed, independent of which other claims are selected.
pub(crate) fn claim_seed(seed: u64, id: &str) -> u64 {
    let tag = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    derive_seed(seed, tag)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn exact_ghz() -> ExactGhzParams {
    ExactGhzParams::from_ratios((1, 1), (0, 1), (0, 1)).expect("valid weights")
}

fn min_pt_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    Bipartition::all(rho.n())?
        .into_iter()
        .map(|cut| Ok(min_eigenvalue(&partial_transpose(rho, cut.side())?)))
        .try_fold(f64::INFINITY, |acc, v: Result<f64>| Result::Ok(acc.min(v?)))
}

fn triple_diff(a: &GhzSymmetricParams, b: &GhzSymmetricParams) -> f64 {
    a.as_array()
        .iter()
        .zip(b.as_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn gbs_ghz(_: u64, out: &mut Outcome) -> Result<()> {
    for (n, d) in GRID {
        let g = geometric_bs(&ghz(n, d)?)?.value;
        out.push(Check::approx(
            &format!("geometric_bs(ghz({n},{d}))"),
            (d as f64 - 1.0) / d as f64,
            g,
            1e-12,
        ));
    }
    Ok(())
}

fn gfs_ghz_w(seed: u64, out: &mut Outcome) -> Result<()> {
    let opts = OptimizerOptions::with_seed(seed);
    let g = geometric_fs(&ghz(3, 2)?, &opts)?;
    let w = geometric_fs(&w_state(), &opts)?;
    out.push(Check::approx("geometric_fs(ghz(3,2))", 0.5, g.value, 1e-6));
    out.push(Check::approx("geometric_fs(W)", 5.0 / 9.0, w.value, 1e-6));
    out.push(Check::approx(
        "G/(1-G) for W",
        1.25,
        w.value / (1.0 - w.value),
        1e-5,
    ));
    out.push(Check::flag(
        "optimizer converged",
        g.converged && w.converged,
    ));
    out.note(format!("{} restarts, seed {}", opts.restarts, opts.seed));
    Ok(())
}

fn ghz_fs_robustness(seed: u64, out: &mut Outcome) -> Result<()> {
    let r = symmetric_robustness_exact(&exact_ghz())?;
    out.push(Check::rational(
        "symmetric robustness of GHZ",
        &q(2, 1),
        &r.value,
    ));
    out.push(Check::rational(
        "mixer lambda_plus",
        &q(0, 1),
        &r.mixer.plus,
    ));
    out.push(Check::rational(
        "mixer lambda_minus",
        &q(1, 4),
        &r.mixer.minus,
    ));
    out.push(Check::rational(
        "mixer lambda_rest",
        &q(3, 4),
        &r.mixer.rest,
    ));

    let tr = ghz_witness_value_exact(&exact_ghz());
    out.push(Check::rational("tr(W_ghz GHZ)", &q(-2, 1), &tr));
    let lower = if tr.is_negative() {
        -tr
    } else {
        BigRational::zero()
    };
    out.push(Check::rational(
        "witness lower bound, exact",
        &q(2, 1),
        &lower,
    ));
    let in_range = ghz_witness_vertex_values()
        .iter()
        .all(|v| *v >= q(0, 1) && *v <= q(1, 1));
    out.push(Check::flag(
        "witness in [0,1] on every separable vertex (exact)",
        in_range,
    ));

    let wit = ghz_robustness_witness().verified(&OptimizerOptions::with_seed(seed))?;
    out.push(Check::flag(
        "witness admitted over product states",
        wit.is_admissible(),
    ));
    let lb = robustness_lower_from_witness(&ghz(3, 2)?.density(), &wit)?;
    out.push(Check::approx(
        "robustness_lower_from_witness(GHZ)",
        2.0,
        lb,
        1e-12,
    ));
    Ok(())
}

fn w_fs_robustness(seed: u64, out: &mut Outcome) -> Result<()> {
    let a = w_robustness_witness();
    out.push(Check::rational(
        "tr(A W)",
        &q(-2, 1),
        &w_witness_value_exact(&DickeWeights::pure_w()),
    ));
    out.push(Check::approx(
        "tr(A W), floating point",
        -2.0,
        a.value_pure(&w_state())?,
        1e-12,
    ));
    let range = witness_range_over_fs(&a, &OptimizerOptions::with_seed(seed))?;
    out.push(Check::at_least(
        "min of A over product states",
        0.0,
        range.min,
        1e-6,
    ));
    out.push(Check::at_most(
        "max of A over product states",
        1.0,
        range.max,
        1e-6,
    ));

    let mut worst: f64 = 0.0;
    for i in 0..64 {
        let alpha = i as f64 * PI / 32.0;
        for j in 0..8 {
            let beta = j as f64 * PI / 4.0;
            worst =
                worst.max((symmetric_triform_value(alpha, beta) - 0.5 * (6.0 * alpha).cos()).abs());
        }
    }
    out.push(Check::at_most(
        "triform vs cos(6 alpha)/2 on 64x8 grid",
        0.0,
        worst,
        1e-10,
    ));

    let eta = w_robustness_mixer();
    let tau = w_robustness_mixture();
    out.push(Check::at_least(
        "min PT eigenvalue of the mixer",
        0.0,
        min_pt_eigenvalue(&eta)?,
        1e-10,
    ));
    out.push(Check::at_least(
        "min PT eigenvalue of the mixture",
        0.0,
        min_pt_eigenvalue(&tau)?,
        1e-10,
    ));
    Ok(())
}

fn w_mixture_as_stated(_: u64, out: &mut Outcome) -> Result<()> {
    let w = w_state().density();
    // roles as originally given: (3/8,1/8,3/8,1/8) is the mixer
    let mixer = w_robustness_mixture();
    let claimed_mixture = w_robustness_mixer();
    match robustness_fs_upper_via_mix(&w, &mixer, &MixOptions::default()) {
        Ok(r) => out.push(Check::approx(
            "robustness_fs_upper_via_mix(W, tau)",
            2.0,
            r.value,
            1e-6,
        )),
        Err(e) => out.push(Check::equal(
            "robustness_fs_upper_via_mix(W, tau)",
            "2".to_string(),
            e.to_string(),
        )),
    }
    let mixed = w.mix_with(&mixer, 2.0)?;
    let diff = max_abs_diff(mixed.entries(), claimed_mixture.entries());
    out.push(Check::at_most(
        "(W + 2 tau)/3 equals eta entrywise",
        0.0,
        diff,
        1e-12,
    ));
    out.push(Check::at_least(
        "min PT eigenvalue of (W + 2 tau)/3",
        0.0,
        min_pt_eigenvalue(&mixed)?,
        1e-10,
    ));
    out.note(
        "With (3/8,1/8,3/8,1/8) on (|000>,|111>,W,Wbar) as the mixer, (W + 2 tau)/3 has \
         weights (1/4,1/12,7/12,1/12), is NPT, and differs from eta. The roles of the two \
         states are swapped; see w-mixture-corrected.",
    );
    Ok(())
}

fn w_mixture_corrected(_: u64, out: &mut Outcome) -> Result<()> {
    let w = w_state().density();
    let eta = w_robustness_mixer();
    let tau = w_robustness_mixture();
    let r = robustness_fs_upper_via_mix(&w, &eta, &MixOptions::default())?;
    out.push(Check::approx(
        "robustness_fs_upper_via_mix(W, eta)",
        2.0,
        r.value,
        1e-6,
    ));
    let diff = max_abs_diff(w.mix_with(&eta, 2.0)?.entries(), tau.entries());
    out.push(Check::at_most(
        "(W + 2 eta)/3 equals tau entrywise",
        0.0,
        diff,
        1e-12,
    ));
    let exact = dicke_mix_exact(
        &DickeWeights::pure_w(),
        &DickeWeights::new((9, 16), (3, 16), (1, 16), (3, 16)),
        &q(2, 1),
    );
    out.push(Check::equal(
        "(W + 2 eta)/3 equals tau, exact",
        true,
        exact == DickeWeights::new((3, 8), (1, 8), (3, 8), (1, 8)),
    ));
    let certifier = FsCertifierOptions::default();
    out.push(Check::flag(
        "eta certified fully separable",
        fs_certificate(&eta, &certifier).is_fs(),
    ));
    out.push(Check::flag(
        "tau certified fully separable",
        fs_certificate(&tau, &certifier).is_fs(),
    ));
    Ok(())
}

fn ghz_unique_mixer(_: u64, out: &mut Outcome) -> Result<()> {
    let m = unique_fs_mixer_for_ghz_exact()?;
    out.push(Check::rational("lambda_plus", &q(0, 1), &m.plus));
    out.push(Check::rational("lambda_minus", &q(1, 4), &m.minus));
    out.push(Check::rational("lambda_rest", &q(3, 4), &m.rest));
    let solutions = fs_mixers_at_weight(&exact_ghz(), &q(2, 1));
    out.push(Check::equal(
        "vertices of the solution set at weight 2",
        1usize,
        solutions.len(),
    ));
    let f = unique_fs_mixer_for_ghz()?;
    let expected = GhzSymmetricParams::new(0.0, 0.25, 0.75)?;
    out.push(Check::at_most(
        "floating-point mixer deviation",
        0.0,
        triple_diff(&f, &expected),
        1e-15,
    ));
    Ok(())
}

fn twirl_fixed_points(seed: u64, out: &mut Outcome) -> Result<()> {
    let g = twirl_pure(&ghz(3, 2)?)?;
    out.push(Check::at_most(
        "twirl(GHZ) vs (1,0,0)",
        0.0,
        triple_diff(&g, &GhzSymmetricParams::new(1.0, 0.0, 0.0)?),
        1e-12,
    ));
    let mut rng = rng_from_seed(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let v = random_unit_vector(3, &mut rng);
        let p = GhzSymmetricParams::new(v[0].norm_sqr(), v[1].norm_sqr(), v[2].norm_sqr())?;
        worst = worst.max(triple_diff(&twirl(&params_to_density(&p))?, &p));
    }
    out.push(Check::at_most(
        "fixed points, 100 random triples",
        0.0,
        worst,
        1e-12,
    ));
    Ok(())
}

fn twirl_w_as_stated(_: u64, out: &mut Outcome) -> Result<()> {
    let t = twirl_pure(&w_state())?;
    out.push(Check::approx(
        "twirl(W) lambda_plus",
        1.0 / 6.0,
        t.plus,
        1e-12,
    ));
    out.push(Check::approx(
        "twirl(W) lambda_minus",
        1.0 / 6.0,
        t.minus,
        1e-12,
    ));
    out.push(Check::approx(
        "twirl(W) lambda_rest",
        2.0 / 3.0,
        t.rest,
        1e-12,
    ));
    out.note(
        "The overlap oracle gives |<GHZ|W>|^2 = |<GHZ-|W>|^2 = 0, so twirl(W) = (0,0,1); \
         the value (1/6,1/6,2/3) is not reachable. See twirl-w-overlap.",
    );
    Ok(())
}

fn twirl_w_overlap(_: u64, out: &mut Outcome) -> Result<()> {
    let w = w_state();
    let plus = w.overlap(&ghz(3, 2)?);
    let minus = w.overlap(&ghz_minus());
    let t = twirl_pure(&w)?;
    out.push(Check::approx(
        "overlap oracle |<GHZ|W>|^2",
        0.0,
        plus,
        1e-15,
    ));
    out.push(Check::approx(
        "overlap oracle |<GHZ-|W>|^2",
        0.0,
        minus,
        1e-15,
    ));
    out.push(Check::approx(
        "twirl(W) lambda_plus vs oracle",
        plus,
        t.plus,
        1e-12,
    ));
    out.push(Check::approx(
        "twirl(W) lambda_minus vs oracle",
        minus,
        t.minus,
        1e-12,
    ));
    out.push(Check::approx(
        "twirl(W) lambda_rest vs oracle",
        1.0 - plus - minus,
        t.rest,
        1e-12,
    ));
    Ok(())
}

fn ghz_to_any(seed: u64, d: usize, count: usize, out: &mut Outcome) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    let source = ghz(3, d)?;
    let (mut deterministic, mut worst, mut violations) = (0usize, 0.0f64, 0usize);
    let mut worst_margin = f64::INFINITY;
    for i in 0..count {
        let target = random_state(3, d, &mut rng)?;
        let map = ghz_to_any_bsp(&target)?;
        if map.p == 1.0 {
            deterministic += 1;
        }
        let image = map.apply_channel(&source.density())?;
        worst = worst.max(max_abs_diff(image.entries(), target.density().entries()));
        let rep = verify_preservation_sampled(&map, 10_000, derive_seed(seed, i as u64))?;
        violations += rep.violations;
        worst_margin = worst_margin.min(rep.worst_overlap_margin.min(rep.worst_mixing_margin));
    }
    out.push(Check::equal("maps built with p = 1", count, deterministic));
    out.push(Check::at_most(
        "max |Lambda(GHZ) - target|",
        0.0,
        worst,
        1e-10,
    ));
    out.push(Check::equal(
        "preservation violations (10^4 samples per map)",
        0usize,
        violations,
    ));
    out.note(format!(
        "{count} random targets; worst preservation margin {worst_margin:.3e}"
    ));
    Ok(())
}

fn ghz_to_any_qubits(seed: u64, out: &mut Outcome) -> Result<()> {
    ghz_to_any(seed, 2, 50, out)
}

fn ghz_to_any_qutrits(seed: u64, out: &mut Outcome) -> Result<()> {
    ghz_to_any(seed, 3, 10, out)
}

fn robustness_formulas(_: u64, out: &mut Outcome) -> Result<()> {
    let bell = ghz(2, 2)?;
    let cut = Bipartition::from_one_based(2, &[1])?;
    out.push(Check::approx(
        "robustness_bipartite_pure(Bell)",
        1.0,
        robustness_bipartite_pure(&bell, cut)?,
        1e-12,
    ));
    for (n, d) in GRID {
        let r = robustness_bs_upper(&ghz(n, d)?)?.value;
        out.push(Check::approx(
            &format!("robustness_bs_upper(ghz({n},{d}))"),
            d as f64 - 1.0,
            r,
            1e-12,
        ));
    }
    Ok(())
}

fn marginal_counterexample(_: u64, out: &mut Outcome) -> Result<()> {
    let phi = four_qubit_phi(0.25)?;
    out.push(Check::approx(
        "geometric_bs(phi(1/4))",
        0.25,
        geometric_bs(&phi)?.value,
        1e-12,
    ));
    let half = DensityMatrix::maximally_mixed(1, 2)?;
    let worst = (0..4)
        .map(|k| {
            Ok(max_abs_diff(
                reduced_pure(&phi, Parties::new(4, &[k])?)?.entries(),
                half.entries(),
            ))
        })
        .try_fold(0.0f64, |acc, v: Result<f64>| Result::Ok(acc.max(v?)))?;
    out.push(Check::at_most(
        "single-party marginals vs diag(1/2,1/2)",
        0.0,
        worst,
        1e-12,
    ));
    let phi_half = four_qubit_phi(0.5)?;
    out.push(Check::approx(
        "geometric_bs(phi(1/2))",
        0.5,
        geometric_bs(&phi_half)?.value,
        1e-12,
    ));
    Ok(())
}

fn maximal_class(_: u64, out: &mut Outcome) -> Result<()> {
    out.push(Check::approx(
        "geometric_bs(cluster(4))",
        0.5,
        geometric_bs(&cluster_state(4)?)?.value,
        1e-10,
    ));
    let ame = ame_4_3();
    let ninth = DensityMatrix::maximally_mixed(2, 3)?;
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            let m = reduced_pure(&ame, Parties::new(4, &[i, j])?)?;
            worst = worst.max(max_abs_diff(m.entries(), ninth.entries()));
        }
    }
    out.push(Check::at_most(
        "two-party marginals of AME(4,3) vs 1/9",
        0.0,
        worst,
        1e-12,
    ));
    out.push(Check::approx(
        "geometric_bs(AME(4,3))",
        2.0 / 3.0,
        geometric_bs(&ame)?.value,
        1e-12,
    ));
    Ok(())
}

fn ghz_plus_threshold(seed: u64, out: &mut Outcome) -> Result<()> {
    let opts = OptimizerOptions::with_seed(seed);
    for c in [0.45f64, 0.6, 0.8, 0.95] {
        let angle = c.cbrt().acos();
        let bound = ghz_plus_robustness_bound(angle, angle, angle)?;
        out.push(Check::at_most(
            &format!("bound at c = {c}"),
            1.25,
            bound.value,
            1e-12,
        ));
        let target = psi_ghz_plus(angle, angle, angle)?;
        let conv = ConversionOptions {
            optimizer: opts,
            r_upper: Some(bound),
        };
        let cert = max_probability(&w_state(), &target, Theory::Fsp, &conv)?;
        out.push(Check::flag(
            &format!("W -> psi_ghz_plus deterministic at c = {c}"),
            cert.deterministic,
        ));
    }
    let bound = |c: f64| (4.0 - c) / (2.0 * (1.0 + c));
    out.push(Check::approx(
        "bound at c = 3/7",
        1.25,
        bound(GHZ_PLUS_DETERMINISTIC_C),
        1e-12,
    ));
    let threshold = bisect_threshold(0.0, 1.0, 1e-12, |c| Ok(bound(c) > 1.25))?;
    out.push(Check::approx(
        "bisected threshold on c",
        3.0 / 7.0,
        threshold,
        1e-9,
    ));

    let flat = ghz_plus_robustness_bound(FRAC_PI_2, FRAC_PI_2, 0.1)?;
    out.push(Check::approx(
        "bound at alpha = beta = pi/2",
        2.0,
        flat.value,
        1e-12,
    ));
    out.push(Check::flag(
        "alpha = beta = pi/2 flagged: bound exceeds 5/4",
        flat.value > 1.25,
    ));
    out.note(
        "At alpha = beta = pi/2 the product of cosines vanishes, so the bound is 2 > 5/4 \
         and the deterministic W conversion is not covered there.",
    );
    Ok(())
}

fn w_class_filter(seed: u64, out: &mut Outcome) -> Result<()> {
    let w_bound = w_class_filter_bound(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)?;
    out.push(Check::approx(
        "filter bound for W itself",
        2.0,
        w_bound.value,
        1e-9,
    ));

    let (x1, x2, x3) = (0.9, 0.05, 0.05);
    let fb = w_class_filter_bound(x1, x2, x3)?;
    out.push(Check::at_most(
        "filter bound for (0.9,0.05,0.05)",
        1.0,
        fb.value,
        0.0,
    ));
    out.push(Check::at_most(
        "decomposition reconstruction error",
        0.0,
        fb.reconstruction_error,
        1e-10,
    ));

    let opts = OptimizerOptions::with_seed(seed);
    let g = geometric_fs(&w_state(), &opts)?.value;
    let target = psi_w(x1, x2, x3)?;
    let r = RobustnessBound::new(fb.value, "W-class filter bound")?;
    let cert = certificate_from_bounds(Theory::Fsp, g, "geometric_fs", &r)?;
    out.push(Check::flag("W -> psi_w deterministic", cert.deterministic));

    let map = build_filter_map(&cert, &w_state(), &target, 1.0, FreeMixer::from(fb))?;
    let image = map.apply_pure(&w_state())?;
    out.push(Check::at_most(
        "max |Lambda(W) - psi_w|",
        0.0,
        max_abs_diff(image.entries(), target.density().entries()),
        1e-10,
    ));
    let rep = verify_preservation_sampled(&map, 10_000, seed)?;
    out.push(Check::equal(
        "preservation violations (10^4 product samples)",
        0usize,
        rep.violations,
    ));
    Ok(())
}

fn preservation_tightness(seed: u64, out: &mut Outcome) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    let (mut clean, mut below_one, mut caught) = (0usize, 0usize, 0usize);
    let pairs = 200;
    for i in 0..pairs {
        let a = random_state(3, 2, &mut rng)?;
        let b = random_state(3, 2, &mut rng)?;
        let cert = max_probability(&a, &b, Theory::Bsp, &ConversionOptions::default())?;
        let mixer: FreeMixer = bs_mixer_for(&b)?.into();
        let s = derive_seed(seed, i as u64);
        let map = build_filter_map(&cert, &a, &b, cert.p_max, mixer.clone())?;
        if verify_preservation_sampled(&map, 10_000, s)?.violations == 0 {
            clean += 1;
        }
        if cert.p_max < 1.0 {
            below_one += 1;
            let p = (1.5 * cert.p_max).min(1.0);
            let inflated = PreparationMap::unchecked(a, p, b, mixer, cert.g_source)?;
            if verify_preservation_sampled(&inflated, 10_000, s)?.violations > 0 {
                caught += 1;
            }
        }
    }
    out.push(Check::equal(
        "pairs without violations at p_max",
        pairs,
        clean,
    ));
    out.push(Check::equal(
        "pairs with p_max < 1 caught at 1.5 p_max",
        below_one,
        caught,
    ));
    out.note(format!("{below_one} of {pairs} pairs have p_max < 1"));
    Ok(())
}

fn full_support_threshold(_: u64, out: &mut Outcome) -> Result<()> {
    let eps = bisect_threshold(1e-6, 0.5, 1e-10, |eps| {
        let t = fully_supported_example(3, 2, eps)?;
        Ok(
            max_probability(&w_state(), &t, Theory::Bsp, &ConversionOptions::default())?
                .deterministic,
        )
    })?;
    out.push(Check::approx(
        "largest eps with deterministic W -> target",
        (1.0 - 0.75f64.sqrt()) / 2.0,
        eps,
        1e-8,
    ));
    let t = fully_supported_example(3, 2, eps)?;
    let smallest = (0..3)
        .map(|k| Ok(reduced_pure(&t, Parties::new(3, &[k])?)?.min_eigenvalue()))
        .try_fold(f64::INFINITY, |acc, v: Result<f64>| Result::Ok(acc.min(v?)))?;
    out.push(Check::at_least(
        "smallest marginal eigenvalue at threshold",
        1e-3,
        smallest,
        0.0,
    ));
    Ok(())
}

pub fn registry() -> Vec<Claim> {
    vec![
        Claim {
            id: "gbs-ghz",
            criterion: "AC-1",
            description: "geometric_bs(ghz(n,d)) = (d-1)/d on the (n,d) grid",
            run: gbs_ghz,
        },
        Claim {
            id: "gfs-ghz-w",
            criterion: "AC-2",
            description: "geometric_fs gives 1/2 for GHZ(3,2) and 5/9 for W",
            run: gfs_ghz_w,
        },
        Claim {
            id: "ghz-fs-robustness",
            criterion: "AC-3",
            description: "FS robustness of GHZ is 2: exact symmetric program and witness bound agree",
            run: ghz_fs_robustness,
        },
        Claim {
            id: "w-fs-robustness",
            criterion: "AC-4",
            description: "W witness: tr(A W) = -2, range over products, triform closed form, PPT of mixer and mixture",
            run: w_fs_robustness,
        },
        Claim {
            id: "w-mixture-as-stated",
            criterion: "AC-4",
            description: "W mixed at weight 2 with (3/8,1/8,3/8,1/8) as mixer reproduces eta (roles as originally given)",
            run: w_mixture_as_stated,
        },
        Claim {
            id: "w-mixture-corrected",
            criterion: "AC-4",
            description: "W mixed at weight 2 with eta = (9/16,3/16,1/16,3/16) gives tau = (3/8,1/8,3/8,1/8)",
            run: w_mixture_corrected,
        },
        Claim {
            id: "ghz-unique-mixer",
            criterion: "AC-5",
            description: "the GHZ-symmetric FS mixer of GHZ at weight 2 is exactly (0,1/4,3/4) and unique",
            run: ghz_unique_mixer,
        },
        Claim {
            id: "twirl-fixed-points",
            criterion: "AC-6",
            description: "twirl(GHZ) = (1,0,0); family members are fixed points",
            run: twirl_fixed_points,
        },
        Claim {
            id: "twirl-w-as-stated",
            criterion: "AC-6",
            description: "twirl(W) = (1/6,1/6,2/3) as originally given",
            run: twirl_w_as_stated,
        },
        Claim {
            id: "twirl-w-overlap",
            criterion: "AC-6",
            description: "twirl(W) matches the GHZ-overlap oracle",
            run: twirl_w_overlap,
        },
        Claim {
            id: "ghz-to-any-qubits",
            criterion: "AC-7",
            description: "GHZ(3,2) converts to 50 random targets with p = 1 and no preservation violations",
            run: ghz_to_any_qubits,
        },
        Claim {
            id: "ghz-to-any-qutrits",
            criterion: "AC-7",
            description: "GHZ(3,3) converts to 10 random targets with p = 1 and no preservation violations",
            run: ghz_to_any_qutrits,
        },
        Claim {
            id: "robustness-formulas",
            criterion: "AC-8",
            description: "bipartite pure robustness of Bell is 1; robustness_bs_upper(ghz(n,d)) = d-1",
            run: robustness_formulas,
        },
        Claim {
            id: "marginal-counterexample",
            criterion: "AC-9",
            description: "maximally mixed single-party marginals do not force geometric_bs = 1/2",
            run: marginal_counterexample,
        },
        Claim {
            id: "maximal-class",
            criterion: "AC-10",
            description: "cluster(4) has geometric_bs 1/2; AME(4,3) is 2-uniform with geometric_bs 2/3",
            run: maximal_class,
        },
        Claim {
            id: "ghz-plus-threshold",
            criterion: "AC-11",
            description: "W -> psi_ghz_plus is deterministic under FSP when cos a cos b cos g >= 3/7",
            run: ghz_plus_threshold,
        },
        Claim {
            id: "w-class-filter",
            criterion: "AC-11",
            description: "local filtering bounds the FS robustness of W-class targets below 5/4",
            run: w_class_filter,
        },
        Claim {
            id: "preservation-tightness",
            criterion: "AC-12",
            description: "maps at p_max preserve biseparability; at 1.5 p_max sampling finds violations",
            run: preservation_tightness,
        },
        Claim {
            id: "full-support-threshold",
            criterion: "AC-12",
            description: "deterministic W -> fully supported target up to eps = (1 - sqrt(3/4))/2",
            run: full_support_threshold,
        },
    ]
}

/// Claims expected to fail because they evaluate statements as originally
/// given; each has a passing corrected companion.
pub const KNOWN_UNATTAINABLE: &[&str] = &["w-mixture-as-stated", "twirl-w-as-stated"];
