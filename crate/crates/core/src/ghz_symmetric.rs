//! The GHZ-symmetric three-qubit family
//! `ρ(λ+, λ-, λ) = λ+ GHZ + λ- GHZ₋ + (λ/6) Σ_{i=001}^{110} |i><i|`.
//!
//! Members are fully separable iff `|λ+ - λ-| <= λ/3`, so the separable part
//! of the family is a polytope with four vertices. Robustness questions
//! restricted to the family are tiny linear programs, solved here by exact
//! vertex enumeration.

use num_rational::BigRational;
use serde::Serialize;

use crate::catalog::{ghz, ghz_minus};
use crate::error::{Error, Result};
use crate::linalg::{c, projector, CMatrix, DensityMatrix, PureState};
use crate::polytope::{minimize, vertices, Constraint, Scalar};

/// `(λ+, λ-, λ)` coordinates of a GHZ-symmetric state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricTriple<T> {
    #[serde(rename = "lambda_plus")]
    pub plus: T,
    #[serde(rename = "lambda_minus")]
    pub minus: T,
    #[serde(rename = "lambda_rest")]
    pub rest: T,
}

pub type GhzSymmetricParams = SymmetricTriple<f64>;
pub type ExactGhzParams = SymmetricTriple<BigRational>;

impl<T: Scalar> SymmetricTriple<T> {
    /// Validates nonnegativity and normalization (up to `T::tolerance()`,
    /// widened to 1e-12 for floats).
    pub fn new(plus: T, minus: T, rest: T) -> Result<Self> {
        let tol = T::tolerance();
        let neg_tol = -tol.clone();
        if plus < neg_tol || minus < neg_tol || rest < neg_tol {
            return Err(Error::InvalidParams(format!(
                "weights must be nonnegative: ({plus:?}, {minus:?}, {rest:?})"
            )));
        }
        let sum = plus.clone() + minus.clone() + rest.clone();
        if (sum.clone() - T::one()).magnitude() > tol {
            return Err(Error::InvalidParams(format!("weights sum to {sum:?}")));
        }
        Ok(SymmetricTriple { plus, minus, rest })
    }

    /// `λ/3 - |λ+ - λ-|`; nonnegative iff fully separable.
    pub fn fs_slack(&self) -> T {
        self.rest.clone() / T::ratio(3, 1) - (self.plus.clone() - self.minus.clone()).magnitude()
    }

    pub fn to_f64(&self) -> GhzSymmetricParams {
        SymmetricTriple {
            plus: self.plus.to_f64(),
            minus: self.minus.to_f64(),
            rest: self.rest.to_f64(),
        }
    }

    fn scaled(&self, k: &T) -> Self {
        SymmetricTriple {
            plus: self.plus.clone() * k.clone(),
            minus: self.minus.clone() * k.clone(),
            rest: self.rest.clone() * k.clone(),
        }
    }
}

impl GhzSymmetricParams {
    pub fn as_array(&self) -> [f64; 3] {
        [self.plus, self.minus, self.rest]
    }
}

impl ExactGhzParams {
    pub fn from_ratios(p: (i64, i64), m: (i64, i64), r: (i64, i64)) -> Result<Self> {
        Self::new(
            BigRational::ratio(p.0, p.1),
            BigRational::ratio(m.0, m.1),
            BigRational::ratio(r.0, r.1),
        )
    }
}

pub fn params_to_density(p: &GhzSymmetricParams) -> DensityMatrix {
    let mut m: CMatrix = projector(ghz(3, 2).expect("valid").amplitudes()).scale(p.plus)
        + projector(ghz_minus().amplitudes()).scale(p.minus);
    for i in 1..7 {
        m[(i, i)] += c(p.rest / 6.0);
    }
    DensityMatrix::new(3, 2, m).expect("valid GHZ-symmetric params give a state")
}

/// Projection onto the family: reads off the GHZ and GHZ₋ populations and
/// assigns the remaining weight to the middle block.
pub fn twirl(rho: &DensityMatrix) -> Result<GhzSymmetricParams> {
    rho.same_shape(3, 2)?;
    let plus = rho.fidelity_with(&ghz(3, 2)?);
    let minus = rho.fidelity_with(&ghz_minus());
    Ok(SymmetricTriple {
        plus,
        minus,
        rest: rho.entries().trace().re - plus - minus,
    })
}

/// Twirl of a pure state.
pub fn twirl_pure(psi: &PureState) -> Result<GhzSymmetricParams> {
    psi.same_shape(3, 2)?;
    let plus = psi.overlap(&ghz(3, 2)?);
    let minus = psi.overlap(&ghz_minus());
    Ok(SymmetricTriple {
        plus,
        minus,
        rest: 1.0 - plus - minus,
    })
}

/// `|λ+ - λ-| <= λ/3 + tol`
pub fn is_fs_symmetric(p: &GhzSymmetricParams, tol: f64) -> bool {
    p.fs_slack() >= -tol
}

/// Vertices of the fully separable part of the family.
pub fn polytope_vertices() -> [GhzSymmetricParams; 4] {
    [
        SymmetricTriple {
            plus: 0.0,
            minus: 0.0,
            rest: 1.0,
        },
        SymmetricTriple {
            plus: 0.0,
            minus: 0.25,
            rest: 0.75,
        },
        SymmetricTriple {
            plus: 0.5,
            minus: 0.5,
            rest: 0.0,
        },
        SymmetricTriple {
            plus: 0.25,
            minus: 0.0,
            rest: 0.75,
        },
    ]
}

/// The constraints defining the fully separable part, over `(λ+, λ-)` with
/// `λ = 1 - λ+ - λ-`.
pub fn fs_polytope_constraints<T: Scalar>() -> Vec<Constraint<T>> {
    let q = T::ratio;
    vec![
        // λ+ - λ- <= λ/3  <=>  (4/3) λ+ - (2/3) λ- <= 1/3
        Constraint::new("facet+", vec![q(4, 3), q(-2, 3)], q(1, 3)),
        Constraint::new("facet-", vec![q(-2, 3), q(4, 3)], q(1, 3)),
        Constraint::new("lambda+>=0", vec![q(-1, 1), q(0, 1)], q(0, 1)),
        Constraint::new("lambda->=0", vec![q(0, 1), q(-1, 1)], q(0, 1)),
        Constraint::new("lambda>=0", vec![q(1, 1), q(1, 1)], q(1, 1)),
    ]
}

/// Minimal mixing weight within the family, with the mixer achieving it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricRobustness<T> {
    pub value: T,
    pub mixer: SymmetricTriple<T>,
}

/// `min { s >= 0 : (t + s σ)/(1 + s) fully separable, σ fully separable
/// GHZ-symmetric }`.
///
/// With `ν = s σ` the problem is linear in `ν` and `s = Σ ν`, so the optimum
/// sits on a vertex of a 3-dimensional polyhedron.
pub fn symmetric_robustness_generic<T: Scalar>(
    target: &SymmetricTriple<T>,
) -> Result<SymmetricRobustness<T>> {
    if target.fs_slack() >= -T::tolerance() {
        return Ok(SymmetricRobustness {
            value: T::zero(),
            mixer: target.clone(),
        });
    }
    let q = T::ratio;
    let third = q(1, 3);
    let delta = target.plus.clone() - target.minus.clone();
    let rest3 = target.rest.clone() * third.clone();
    let constraints = vec![
        Constraint::new(
            "mixer facet+",
            vec![q(1, 1), q(-1, 1), -third.clone()],
            T::zero(),
        ),
        Constraint::new(
            "mixer facet-",
            vec![q(-1, 1), q(1, 1), -third.clone()],
            T::zero(),
        ),
        Constraint::new(
            "mixture facet+",
            vec![q(1, 1), q(-1, 1), -third.clone()],
            rest3.clone() - delta.clone(),
        ),
        Constraint::new(
            "mixture facet-",
            vec![q(-1, 1), q(1, 1), -third],
            rest3 + delta,
        ),
        Constraint::new("nu+>=0", vec![q(-1, 1), q(0, 1), q(0, 1)], T::zero()),
        Constraint::new("nu->=0", vec![q(0, 1), q(-1, 1), q(0, 1)], T::zero()),
        Constraint::new("nu>=0", vec![q(0, 1), q(0, 1), q(-1, 1)], T::zero()),
    ];
    let (value, nu) = minimize(&[q(1, 1), q(1, 1), q(1, 1)], &constraints)
        .ok_or_else(|| Error::Inconsistent("robustness program has no vertex".into()))?;
    let mixer = SymmetricTriple {
        plus: nu[0].clone(),
        minus: nu[1].clone(),
        rest: nu[2].clone(),
    }
    .scaled(&(T::one() / value.clone()));
    Ok(SymmetricRobustness { value, mixer })
}

pub fn symmetric_robustness(target: &GhzSymmetricParams) -> SymmetricRobustness<f64> {
    symmetric_robustness_generic(target).expect("the family always admits a separable mixture")
}

pub fn symmetric_robustness_exact(
    target: &ExactGhzParams,
) -> Result<SymmetricRobustness<BigRational>> {
    symmetric_robustness_generic(target)
}

/// Vertices of the set of separable GHZ-symmetric `υ` for which
/// `(t + s υ)/(1 + s)` is separable as well.
pub fn fs_mixers_at_weight(target: &ExactGhzParams, s: &BigRational) -> Vec<ExactGhzParams> {
    let q = <BigRational as Scalar>::ratio;
    let delta = target.plus.clone() - target.minus.clone();
    let third = q(1, 3);
    // |Δ + s(x - y)| <= (t_λ + s(1 - x - y))/3
    let bound = (target.rest.clone() + s.clone()) * third.clone();
    let mut constraints = fs_polytope_constraints::<BigRational>();
    constraints.push(Constraint::new(
        "mixture facet+",
        vec![s.clone() * q(4, 3), s.clone() * q(-2, 3)],
        bound.clone() - delta.clone(),
    ));
    constraints.push(Constraint::new(
        "mixture facet-",
        vec![s.clone() * q(-2, 3), s.clone() * q(4, 3)],
        bound + delta,
    ));
    vertices(&constraints, 2)
        .into_iter()
        .map(|v| {
            let rest = q(1, 1) - v[0].clone() - v[1].clone();
            SymmetricTriple {
                plus: v[0].clone(),
                minus: v[1].clone(),
                rest,
            }
        })
        .collect()
}

/// The only separable GHZ-symmetric `υ` with `GHZ/3 + 2υ/3` separable.
/// Fails if the solution set is not a single point.
pub fn unique_fs_mixer_for_ghz_exact() -> Result<ExactGhzParams> {
    let target = ExactGhzParams::from_ratios((1, 1), (0, 1), (0, 1))?;
    let mut sols = fs_mixers_at_weight(&target, &BigRational::ratio(2, 1));
    match sols.len() {
        1 => Ok(sols.remove(0)),
        k => Err(Error::Inconsistent(format!(
            "expected a single separable mixer, solution set has {k} vertices"
        ))),
    }
}

pub fn unique_fs_mixer_for_ghz() -> Result<GhzSymmetricParams> {
    Ok(unique_fs_mixer_for_ghz_exact()?.to_f64())
}

/// Returns the family coordinates when `rho` lies in the GHZ-symmetric family
/// (entrywise within `tol`).
pub fn as_ghz_symmetric(rho: &DensityMatrix, tol: f64) -> Option<GhzSymmetricParams> {
    let p = twirl(rho).ok()?;
    let back = params_to_density(&SymmetricTriple {
        plus: p.plus.max(0.0),
        minus: p.minus.max(0.0),
        rest: p.rest.max(0.0),
    });
    (crate::linalg::max_abs_diff(back.entries(), rho.entries()) <= tol).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::w_state;
    use crate::linalg::hermitian_eigenvalues;

    fn p(a: f64, b: f64, c: f64) -> GhzSymmetricParams {
        GhzSymmetricParams::new(a, b, c).unwrap()
    }

    fn close(a: &GhzSymmetricParams, b: &GhzSymmetricParams, tol: f64) -> bool {
        a.as_array()
            .iter()
            .zip(b.as_array())
            .all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn validation() {
        assert!(GhzSymmetricParams::new(0.5, 0.5, 0.1).is_err());
        assert!(GhzSymmetricParams::new(-0.1, 0.6, 0.5).is_err());
        assert!(ExactGhzParams::from_ratios((1, 3), (1, 6), (1, 2)).is_ok());
        assert!(ExactGhzParams::from_ratios((1, 3), (1, 6), (1, 3)).is_err());
    }

    #[test]
    fn density_of_corner_points() {
        let g = params_to_density(&p(1.0, 0.0, 0.0));
        let want = ghz(3, 2).unwrap().density();
        assert!(crate::linalg::max_abs_diff(g.entries(), want.entries()) < 1e-15);

        let mid = params_to_density(&p(0.0, 0.0, 1.0));
        for i in 0..8 {
            let want = if (1..7).contains(&i) { 1.0 / 6.0 } else { 0.0 };
            assert!((mid.entries()[(i, i)].re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_of_interior_point() {
        let r = params_to_density(&p(1.0 / 3.0, 1.0 / 6.0, 0.5));
        let got = hermitian_eigenvalues(r.entries());
        let mut want = vec![1.0 / 12.0; 6];
        want.extend([1.0 / 6.0, 1.0 / 3.0]);
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn twirl_examples() {
        let g = twirl(&ghz(3, 2).unwrap().density()).unwrap();
        assert!(close(&g, &p(1.0, 0.0, 0.0), 1e-15));
        let t = p(0.2, 0.3, 0.5);
        assert!(close(&twirl(&params_to_density(&t)).unwrap(), &t, 1e-15));
        // <GHZ±|W> = 0: W has no support on |000>, |111>
        let w = twirl_pure(&w_state()).unwrap();
        assert!(close(&w, &p(0.0, 0.0, 1.0), 1e-15));
        assert!(twirl(&DensityMatrix::maximally_mixed(2, 2).unwrap()).is_err());
    }

    #[test]
    fn separability_criterion() {
        assert!(is_fs_symmetric(&p(0.0, 0.25, 0.75), 0.0));
        assert!(!is_fs_symmetric(&p(1.0, 0.0, 0.0), 1e-10));
        assert!(is_fs_symmetric(&p(1.0 / 3.0, 1.0 / 6.0, 0.5), 1e-15));
        let exact = ExactGhzParams::from_ratios((1, 3), (1, 6), (1, 2)).unwrap();
        assert_eq!(exact.fs_slack(), BigRational::ratio(0, 1));
    }

    #[test]
    fn vertices_match_enumeration() {
        let found = vertices(&fs_polytope_constraints::<BigRational>(), 2);
        assert_eq!(found.len(), 4);
        for v in polytope_vertices() {
            assert!(is_fs_symmetric(&v, 0.0));
            let hit = found.iter().any(|f| {
                (f[0].to_f64() - v.plus).abs() < 1e-15 && (f[1].to_f64() - v.minus).abs() < 1e-15
            });
            assert!(hit, "{v:?} not a vertex");
            let xs = [v.plus, v.minus];
            let active = fs_polytope_constraints::<f64>()
                .iter()
                .filter(|c| c.active(&xs))
                .count();
            assert!(active >= 2);
        }
    }

    #[test]
    fn hull_contains_interior_point() {
        // (1/8, 1/8, 3/4) = ½ σ₂ + ½ σ₄
        let [_, s2, _, s4] = polytope_vertices();
        let mid = [
            0.5 * (s2.plus + s4.plus),
            0.5 * (s2.minus + s4.minus),
            0.5 * (s2.rest + s4.rest),
        ];
        assert_eq!(mid, [0.125, 0.125, 0.75]);
    }

    #[test]
    fn ghz_robustness_exact() {
        let t = ExactGhzParams::from_ratios((1, 1), (0, 1), (0, 1)).unwrap();
        let r = symmetric_robustness_exact(&t).unwrap();
        assert_eq!(r.value, BigRational::ratio(2, 1));
        assert_eq!(
            r.mixer,
            ExactGhzParams::from_ratios((0, 1), (1, 4), (3, 4)).unwrap()
        );

        let f = symmetric_robustness(&p(1.0, 0.0, 0.0));
        assert!((f.value - 2.0).abs() < 1e-12);
        assert!(close(&f.mixer, &p(0.0, 0.25, 0.75), 1e-12));
    }

    #[test]
    fn separable_target_has_zero_robustness() {
        let t = p(0.0, 0.25, 0.75);
        let r = symmetric_robustness(&t);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.mixer, t);
    }

    #[test]
    fn half_ghz_target_against_grid_oracle() {
        let target = p(0.5, 0.0, 0.5);
        let r = symmetric_robustness(&target);
        // brute force: scan separable mixers on a grid, bisect on s for each
        let mut best = f64::INFINITY;
        let steps = 200;
        for i in 0..=steps {
            for j in 0..=steps - i {
                let (x, y) = (i as f64 / steps as f64, j as f64 / steps as f64);
                let m = SymmetricTriple {
                    plus: x,
                    minus: y,
                    rest: 1.0 - x - y,
                };
                if !is_fs_symmetric(&m, 1e-12) {
                    continue;
                }
                let ok = |s: f64| {
                    let mix = SymmetricTriple {
                        plus: (target.plus + s * m.plus) / (1.0 + s),
                        minus: (target.minus + s * m.minus) / (1.0 + s),
                        rest: (target.rest + s * m.rest) / (1.0 + s),
                    };
                    is_fs_symmetric(&mix, 1e-12)
                };
                if !ok(10.0) {
                    continue;
                }
                let (mut lo, mut hi) = (0.0, 10.0);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if ok(mid) {
                        hi = mid
                    } else {
                        lo = mid
                    }
                }
                best = best.min(hi);
            }
        }
        assert!((best - 2.0 / 3.0).abs() < 1e-9, "grid oracle {best}");
        assert!((r.value - best).abs() < 1e-9);
        assert!(close(&r.mixer, &p(0.0, 0.25, 0.75), 1e-12));
    }

    #[test]
    fn unique_mixer() {
        let u = unique_fs_mixer_for_ghz_exact().unwrap();
        assert_eq!(
            u,
            ExactGhzParams::from_ratios((0, 1), (1, 4), (3, 4)).unwrap()
        );
        // GHZ/3 + 2u/3 = (1/3, 1/6, 1/2)
        let mix = SymmetricTriple {
            plus: BigRational::ratio(1, 3) + BigRational::ratio(2, 3) * u.plus.clone(),
            minus: BigRational::ratio(2, 3) * u.minus.clone(),
            rest: BigRational::ratio(2, 3) * u.rest.clone(),
        };
        assert_eq!(
            mix,
            ExactGhzParams::from_ratios((1, 3), (1, 6), (1, 2)).unwrap()
        );
        // nudging λ+ up breaks the mixture constraint
        let (x, y): (f64, f64) = (0.01, 0.25);
        assert!((1.0 / 3.0 + 2.0 / 3.0 * (x - y)).abs() > 2.0 / 9.0 * (1.0 - x - y));
    }

    #[test]
    fn detects_ghz_symmetric_densities() {
        let t = p(0.1, 0.2, 0.7);
        let got = as_ghz_symmetric(&params_to_density(&t), 1e-12).unwrap();
        assert!(close(&got, &t, 1e-14));
        assert!(as_ghz_symmetric(&w_state().density(), 1e-12).is_none());
    }
}
