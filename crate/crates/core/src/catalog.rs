//! Named states used throughout the crate, the CLI and the reproduction suite.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, CVector, DensityMatrix, PureState};

/// A constructed catalog state together with the parameters that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<f64>,
    #[serde(skip)]
    pub state: PureState,
}

/// Names accepted by [`lookup`], with their parameter lists.
pub const NAMES: &[(&str, &str)] = &[
    ("ghz", "n d"),
    ("bell", ""),
    ("w", ""),
    ("w-bar", ""),
    ("ghz-minus", ""),
    ("ghz-plus", "alpha beta gamma"),
    ("psi-w", "x1 x2 x3"),
    ("phi4", "p"),
    ("fully-supported", "n d eps"),
    ("cluster", "n"),
    ("ame-4-3", ""),
    ("basis", "n d index"),
];

/// Builds a catalog state by name.
pub fn lookup(name: &str, params: &[f64]) -> Result<CatalogEntry> {
    let arity = |k: usize| -> Result<()> {
        if params.len() != k {
            return Err(Error::OutOfRange(format!(
                "`{name}` takes {k} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(())
    };
    let int = |x: f64| -> Result<usize> {
        if x.fract() != 0.0 || x < 0.0 {
            return Err(Error::OutOfRange(format!("expected an integer, got {x}")));
        }
        Ok(x as usize)
    };
    let state = match name {
        "ghz" => {
            arity(2)?;
            ghz(int(params[0])?, int(params[1])?)?
        }
        "bell" => {
            arity(0)?;
            ghz(2, 2)?
        }
        "w" => {
            arity(0)?;
            w_state()
        }
        "w-bar" => {
            arity(0)?;
            w_bar()
        }
        "ghz-minus" => {
            arity(0)?;
            ghz_minus()
        }
        "ghz-plus" => {
            arity(3)?;
            psi_ghz_plus(params[0], params[1], params[2])?
        }
        "psi-w" => {
            arity(3)?;
            psi_w(params[0], params[1], params[2])?
        }
        "phi4" => {
            arity(1)?;
            four_qubit_phi(params[0])?
        }
        "fully-supported" => {
            arity(3)?;
            fully_supported_example(int(params[0])?, int(params[1])?, params[2])?
        }
        "cluster" => {
            arity(1)?;
            cluster_state(int(params[0])?)?
        }
        "ame-4-3" => {
            arity(0)?;
            ame_4_3()
        }
        "basis" => {
            arity(3)?;
            PureState::basis(int(params[0])?, int(params[1])?, int(params[2])?)?
        }
        other => return Err(Error::UnknownState(other.to_string())),
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        params: params.to_vec(),
        state,
    })
}

fn three_qubit(amps: [f64; 8]) -> PureState {
    PureState::from_real(3, 2, &amps).expect("fixed 3-qubit vector")
}

/// `(1/√d) Σ_i |i>^{⊗n}`
pub fn ghz(n: usize, d: usize) -> Result<PureState> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidDimensions(format!(
            "GHZ needs n >= 2 and d >= 2, got n = {n}, d = {d}"
        )));
    }
    let dim = d.pow(n as u32);
    // |i..i> has index i * (d^n - 1) / (d - 1)
    let stride = (dim - 1) / (d - 1);
    let mut amps = CVector::zeros(dim);
    for i in 0..d {
        amps[i * stride] = c(1.0);
    }
    PureState::normalized(n, d, amps)
}

/// `(|001> + |010> + |100>) / √3`
pub fn w_state() -> PureState {
    three_qubit([0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0])
}

/// Qubit-flipped W: `(|110> + |101> + |011>) / √3`
pub fn w_bar() -> PureState {
    three_qubit([0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0])
}

/// `(|000> - |111>) / √2`
pub fn ghz_minus() -> PureState {
    three_qubit([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0])
}

fn check_angle(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x <= FRAC_PI_2 + 1e-15) {
        return Err(Error::OutOfRange(format!(
            "{name} = {x} must lie in (0, π/2]"
        )));
    }
    Ok(())
}

/// `√K (|000> + |φ_A φ_B φ_C>)` with `|φ(θ)> = cos θ |0> + sin θ |1>` and
/// `K = 1 / (2 (1 + cos α cos β cos γ))`.
pub fn psi_ghz_plus(alpha: f64, beta: f64, gamma: f64) -> Result<PureState> {
    check_angle("alpha", alpha)?;
    check_angle("beta", beta)?;
    check_angle("gamma", gamma)?;
    let local = |t: f64| [t.cos(), t.sin()];
    let (a, b, g) = (local(alpha), local(beta), local(gamma));
    let mut amps = [0.0; 8];
    for (i, amp) in amps.iter_mut().enumerate() {
        *amp = a[(i >> 2) & 1] * b[(i >> 1) & 1] * g[i & 1];
    }
    amps[0] += 1.0;
    let k = 1.0 / (2.0 * (1.0 + alpha.cos() * beta.cos() * gamma.cos()));
    let v = CVector::from_iterator(8, amps.iter().map(|&x| c(x * k.sqrt())));
    PureState::new(3, 2, v)
}

/// `√x1 |001> + √x2 |010> + √x3 |100>`
pub fn psi_w(x1: f64, x2: f64, x3: f64) -> Result<PureState> {
    if [x1, x2, x3].iter().any(|&x| !(x >= 0.0)) || (x1 + x2 + x3 - 1.0).abs() > 1e-12 {
        return Err(Error::OutOfRange(format!(
            "W-class weights must be nonnegative and sum to 1, got ({x1}, {x2}, {x3})"
        )));
    }
    let mut amps = CVector::zeros(8);
    amps[1] = c(x1.sqrt());
    amps[2] = c(x2.sqrt());
    amps[4] = c(x3.sqrt());
    PureState::normalized(3, 2, amps)
}

/// `√p |φ+>_12 |φ+>_34 + √(1-p) |φ->_12 |φ->_34`
pub fn four_qubit_phi(p: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("p = {p} must lie in [0, 1]")));
    }
    // |φ±>|φ±> = (|0000> ± |0011> ± |1100> + |1111>) / 2
    let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
    let mut amps = CVector::zeros(16);
    amps[0b0000] = c((a + b) / 2.0);
    amps[0b0011] = c((a - b) / 2.0);
    amps[0b1100] = c((a - b) / 2.0);
    amps[0b1111] = c((a + b) / 2.0);
    PureState::normalized(4, 2, amps)
}

/// `√(1-ε) |0..0> + Σ_{i≥1} √(ε/(d-1)) |i..i>`; every single-party marginal
/// has full rank for `0 < ε < 1`.
pub fn fully_supported_example(n: usize, d: usize, eps: f64) -> Result<PureState> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::OutOfRange(format!("eps = {eps} must lie in (0, 1)")));
    }
    let base = ghz(n, d)?;
    let stride = (base.dim() - 1) / (d - 1);
    let mut amps = CVector::zeros(base.dim());
    amps[0] = c((1.0 - eps).sqrt());
    for i in 1..d {
        amps[i * stride] = c((eps / (d - 1) as f64).sqrt());
    }
    PureState::normalized(n, d, amps)
}

/// Linear cluster state: `|+>^{⊗n}` followed by controlled-Z on each
/// neighbouring pair (CZ = diag(1, 1, 1, -1)).
pub fn cluster_state(n: usize) -> Result<PureState> {
    if !(3..=20).contains(&n) {
        return Err(Error::InvalidDimensions(format!(
            "cluster state needs 3 <= n <= 20, got {n}"
        )));
    }
    let dim = 1usize << n;
    let amps = CVector::from_fn(dim, |x, _| {
        let bit = |k: usize| (x >> (n - 1 - k)) & 1;
        let parity: usize = (0..n - 1).map(|k| bit(k) & bit(k + 1)).sum();
        c(if parity.is_multiple_of(2) { 1.0 } else { -1.0 })
    });
    PureState::normalized(n, 2, amps)
}

/// AME(4,3) from the ternary linear code `|i, j, i+j, i+2j>` (mod 3).
pub fn ame_4_3() -> PureState {
    let mut amps = CVector::zeros(81);
    for i in 0..3 {
        for j in 0..3 {
            let digits = [i, j, (i + j) % 3, (i + 2 * j) % 3];
            let idx = digits.iter().fold(0, |acc, &x| acc * 3 + x);
            amps[idx] = c(1.0);
        }
    }
    PureState::normalized(4, 3, amps).expect("nonzero vector")
}

/// `a |000><000| + b |111><111| + w |W><W| + w̄ |W̄><W̄|`, a 3-qubit state
/// diagonal in the symmetric (Dicke) basis.
pub fn dicke_diagonal(a: f64, b: f64, w: f64, w_bar_weight: f64) -> Result<DensityMatrix> {
    let zero = PureState::basis(3, 2, 0)?.density();
    let one = PureState::basis(3, 2, 7)?.density();
    DensityMatrix::mixture(&[
        (a, &zero),
        (b, &one),
        (w, &w_state().density()),
        (w_bar_weight, &w_bar().density()),
    ])
}

/// Fully separable state that, mixed with `W` at weight 2, stays fully
/// separable: `(W + 2 mixer) / 3 =` [`w_robustness_mixture`].
/// Coefficients `(9/16, 3/16, 1/16, 3/16)` on `(|000>, |111>, W, W̄)`.
pub fn w_robustness_mixer() -> DensityMatrix {
    dicke_diagonal(9.0 / 16.0, 3.0 / 16.0, 1.0 / 16.0, 3.0 / 16.0).expect("valid weights")
}

/// Coefficients `(3/8, 1/8, 3/8, 1/8)` on `(|000>, |111>, W, W̄)`.
pub fn w_robustness_mixture() -> DensityMatrix {
    dicke_diagonal(3.0 / 8.0, 1.0 / 8.0, 3.0 / 8.0, 1.0 / 8.0).expect("valid weights")
}
