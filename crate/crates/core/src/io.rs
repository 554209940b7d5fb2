//! JSON form of states.
//!
//! Pure states: `{"n": 3, "d": 2, "amplitudes": [[re, im], ...]}`.
//! Density matrices: `{"n": 3, "d": 2, "entries": [[re, im], ...]}`, row-major.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Bipartition, CMatrix, CVector, DensityMatrix, PureState, C64};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PureRepr {
    n: usize,
    d: usize,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityRepr {
    n: usize,
    d: usize,
    entries: Vec<[f64; 2]>,
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: &[f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PureRepr {
            n: self.n(),
            d: self.d(),
            amplitudes: self.amplitudes().iter().map(pair).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = PureRepr::deserialize(de)?;
        let amps = CVector::from_iterator(r.amplitudes.len(), r.amplitudes.iter().map(complex));
        let expected = r.d.checked_pow(r.n as u32).unwrap_or(usize::MAX);
        if amps.len() != expected {
            return Err(D::Error::custom(format!(
                "field `amplitudes`: expected {expected} entries for n = {}, d = {}, got {}",
                r.n,
                r.d,
                amps.len()
            )));
        }
        PureState::new(r.n, r.d, amps).map_err(D::Error::custom)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.entries();
        let entries = (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| pair(&m[(i, j)])))
            .collect();
        DensityRepr {
            n: self.n(),
            d: self.d(),
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = DensityRepr::deserialize(de)?;
        let dim = r.d.checked_pow(r.n as u32).unwrap_or(usize::MAX);
        if dim.checked_mul(dim) != Some(r.entries.len()) {
            return Err(D::Error::custom(format!(
                "field `entries`: expected {dim}x{dim} values for n = {}, d = {}, got {}",
                r.n,
                r.d,
                r.entries.len()
            )));
        }
        let m = CMatrix::from_fn(dim, dim, |i, j| complex(&r.entries[i * dim + j]));
        DensityMatrix::new(r.n, r.d, m).map_err(D::Error::custom)
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A state file holding either a pure state or a density matrix.
#[derive(Debug, Clone)]
pub enum AnyState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl AnyState {
    pub fn density(&self) -> DensityMatrix {
        match self {
            AnyState::Pure(p) => p.density(),
            AnyState::Mixed(m) => m.clone(),
        }
    }

    pub fn pure(&self) -> Result<&PureState> {
        match self {
            AnyState::Pure(p) => Ok(p),
            AnyState::Mixed(_) => Err(Error::InvalidParams(
                "this operation needs a pure state (`amplitudes`), got a density matrix".into(),
            )),
        }
    }
}

pub fn pure_from_json(text: &str) -> Result<PureState> {
    Ok(serde_json::from_str(text)?)
}

pub fn density_from_json(text: &str) -> Result<DensityMatrix> {
    Ok(serde_json::from_str(text)?)
}

/// Parses either form, dispatching on the presence of `amplitudes`.
pub fn state_from_json(text: &str) -> Result<AnyState> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("amplitudes").is_some() {
        Ok(AnyState::Pure(pure_from_json(text)?))
    } else if value.get("entries").is_some() {
        Ok(AnyState::Mixed(density_from_json(text)?))
    } else {
        Err(Error::Json(
            "expected a field `amplitudes` (pure state) or `entries` (density matrix)".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ghz, w_state};

    #[test]
    fn pure_round_trip() {
        let g = ghz(3, 2).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.starts_with(r#"{"n":3,"d":2,"amplitudes":[["#));
        assert_eq!(pure_from_json(&text).unwrap(), g);
    }

    #[test]
    fn density_round_trip() {
        let rho = w_state().density();
        let text = serde_json::to_string(&rho).unwrap();
        let back = density_from_json(&text).unwrap();
        assert_eq!(back, rho);
        assert!(matches!(
            state_from_json(&text).unwrap(),
            AnyState::Mixed(_)
        ));
    }

    #[test]
    fn diagnostics() {
        let bad_len = r#"{"n":2,"d":2,"amplitudes":[[1,0]]}"#;
        let msg = pure_from_json(bad_len).unwrap_err().to_string();
        assert!(msg.contains("`amplitudes`"), "{msg}");

        let not_normalized = r#"{"n":1,"d":2,"amplitudes":[[1,0],[1,0]]}"#;
        assert!(pure_from_json(not_normalized).is_err());

        let syntax = "{\"n\":1,\n\"d\":2,";
        let msg = state_from_json(syntax).unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");

        let unknown = r#"{"n":1,"d":2,"amplitudes":[[1,0],[0,0]],"x":1}"#;
        assert!(pure_from_json(unknown).is_err());
    }

    #[test]
    fn cut_serializes_as_labels() {
        let cut = Bipartition::from_one_based(3, &[2, 3]).unwrap();
        assert_eq!(serde_json::to_string(&cut).unwrap(), r#""{1}|{2,3}""#);
    }
}
