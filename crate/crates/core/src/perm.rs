//! Permutations of `{0, …, N-1}` in one-line notation.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `Perm(p)` sends `i` to `p[i]`. Composition is right-to-left:
/// `(s * t)(i) = s(t(i))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm<const N: usize>([u8; N]);

pub type Perm4 = Perm<4>;
pub type Perm5 = Perm<5>;

impl<const N: usize> Perm<N> {
    pub fn identity() -> Self {
        let mut p = [0u8; N];
        for (i, x) in p.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm(p)
    }

    pub fn new(images: [u8; N]) -> Result<Self> {
        let mut seen = [false; N];
        for &x in &images {
            let x = x as usize;
            if x >= N || seen[x] {
                return Err(Error::domain(format!("{images:?} is not a permutation of 0..{N}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn from_slice(images: &[usize]) -> Result<Self> {
        if images.len() != N {
            return Err(Error::domain(format!("permutation needs {N} images")));
        }
        let mut p = [0u8; N];
        for (slot, &x) in p.iter_mut().zip(images) {
            *slot = u8::try_from(x).map_err(|_| Error::domain("image out of range"))?;
        }
        Self::new(p)
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut p = Self::identity();
        p.0.swap(a, b);
        p
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> [u8; N] {
        self.0
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut p = [0u8; N];
        for (i, x) in p.iter_mut().enumerate() {
            *x = self.0[other.0[i] as usize];
        }
        Perm(p)
    }

    pub fn inverse(&self) -> Self {
        let mut p = [0u8; N];
        for (i, &x) in self.0.iter().enumerate() {
            p[x as usize] = i as u8;
        }
        Perm(p)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let mut seen = [false; N];
        let mut sign = 1;
        for start in 0..N {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// All `N!` permutations in lexicographic order of their images.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Self::identity().0;
        loop {
            out.push(Perm(cur));
            // next lexicographic permutation
            let Some(i) = (0..N.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..N).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Parses one-line notation such as `(1023)` or `1023`.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let digits: Vec<usize> = body
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::parse(format!("bad permutation {s:?}")))
            })
            .collect::<Result<_>>()?;
        Self::from_slice(&digits).map_err(|_| Error::parse(format!("bad permutation {s:?}")))
    }
}

impl Perm4 {
    /// Extends to a permutation of `{0,…,4}` fixing 4.
    pub fn extend(&self) -> Perm5 {
        Perm([self.0[0], self.0[1], self.0[2], self.0[3], 4])
    }
}

impl<const N: usize> Default for Perm<N> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<const N: usize> fmt::Display for Perm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for x in self.0 {
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl<const N: usize> fmt::Debug for Perm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<const N: usize> Serialize for Perm<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for Perm<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Self::from_slice(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        assert_eq!(Perm4::all().len(), 24);
        assert_eq!(Perm5::all().len(), 120);
        assert_eq!(Perm4::all().iter().filter(|p| p.sign() == 1).count(), 12);
        assert_eq!(Perm4::transposition(0, 3).sign(), -1);
    }

    #[test]
    fn compose_is_right_to_left() {
        let s = Perm4::parse("(1230)").unwrap();
        let t = Perm4::transposition(0, 1);
        assert_eq!(s.compose(&t).apply(0), s.apply(1));
        assert_eq!(s.compose(&s.inverse()), Perm4::identity());
        assert!(Perm4::parse("(112)").is_err());
    }
}
