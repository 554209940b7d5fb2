use std::fmt;

use crate::error::{Error, Result};

/// Largest party count representable by the bitmask encoding.
pub const MAX_PARTIES: usize = 31;

/// A subset of the parties `0..n`, stored as a bitmask (bit `k` is party `k`).
///
/// Party indices are zero-based in the API. `Display` and the CLI use the
/// one-based labels `{1, .., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parties {
    n: usize,
    mask: u32,
}

impl Parties {
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        check_party_count(n)?;
        let mut mask = 0u32;
        for &k in indices {
            if k >= n {
                return Err(Error::InvalidSubset(format!(
                    "party index {k} out of range for n = {n}"
                )));
            }
            mask |= 1 << k;
        }
        Ok(Parties { n, mask })
    }

    pub fn from_one_based(n: usize, labels: &[usize]) -> Result<Self> {
        let indices = labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or_else(|| Error::InvalidSubset("party labels start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &indices)
    }

    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        check_party_count(n)?;
        if mask >> n != 0 {
            return Err(Error::InvalidSubset(format!(
                "mask {mask:#b} has bits beyond n = {n}"
            )));
        }
        Ok(Parties { n, mask })
    }

    pub fn all(n: usize) -> Result<Self> {
        check_party_count(n)?;
        Ok(Parties {
            n,
            mask: full_mask(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.n)
    }

    pub fn contains(&self, k: usize) -> bool {
        k < self.n && self.mask & (1 << k) != 0
    }

    pub fn complement(&self) -> Self {
        Parties {
            n: self.n,
            mask: !self.mask & full_mask(self.n),
        }
    }

    /// Party indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&k| self.contains(k))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.iter().map(|k| k + 1).collect()
    }
}

impl fmt::Display for Parties {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.one_based().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// An unordered cut `M | complement(M)` of the parties.
///
/// Canonical form keeps the side that contains party 0, so each of the
/// `2^(n-1) - 1` cuts has exactly one representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    side: Parties,
}

impl Bipartition {
    pub fn new(side: Parties) -> Result<Self> {
        if side.is_empty() || side.is_full() {
            return Err(Error::InvalidSubset(format!(
                "a cut needs a nonempty proper subset, got {side}"
            )));
        }
        let side = if side.contains(0) {
            side
        } else {
            side.complement()
        };
        Ok(Bipartition { side })
    }

    pub fn from_one_based(n: usize, labels: &[usize]) -> Result<Self> {
        Self::new(Parties::from_one_based(n, labels)?)
    }

    /// Every canonical cut of `n` parties, ordered by bitmask.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        check_party_count(n)?;
        if n < 2 {
            return Ok(Vec::new());
        }
        let full = full_mask(n);
        Ok((1..full)
            .filter(|m| m & 1 == 1)
            .map(|mask| Bipartition {
                side: Parties { n, mask },
            })
            .collect())
    }

    /// The side containing party 0.
    pub fn side(&self) -> Parties {
        self.side
    }

    pub fn complement(&self) -> Parties {
        self.side.complement()
    }

    pub fn n(&self) -> usize {
        self.side.n
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.side, self.side.complement())
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_party_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTIES {
        return Err(Error::InvalidDimensions(format!(
            "party count must be in 1..={MAX_PARTIES}, got {n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_count_matches_formula() {
        for n in 2..=6 {
            let cuts = Bipartition::all(n).unwrap();
            assert_eq!(cuts.len(), (1 << (n - 1)) - 1);
            assert!(cuts.iter().all(|c| c.side().contains(0)));
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Bipartition::from_one_based(3, &[2, 3]).unwrap();
        let b = Bipartition::from_one_based(3, &[1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{1}|{2,3}");
    }

    #[test]
    fn rejects_trivial_cuts() {
        assert!(Bipartition::new(Parties::all(3).unwrap()).is_err());
        assert!(Bipartition::new(Parties::new(3, &[]).unwrap()).is_err());
        assert!(Parties::new(3, &[3]).is_err());
        assert!(Parties::from_one_based(3, &[0]).is_err());
    }
}
