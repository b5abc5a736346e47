//! Exact sparse polynomials in Z[A^{±1}, Z, W].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exponent triple. Orders by A-degree descending, then Z and W ascending, so
/// map iteration is the canonical term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: i64,
    pub z: u32,
    pub w: u32,
}

impl Monomial {
    pub fn new(a: i64, z: u32, w: u32) -> Self {
        Monomial { a, z, w }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .a
            .cmp(&self.a)
            .then(self.z.cmp(&other.z))
            .then(self.w.cmp(&other.w))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed term `{0}`")]
    Term(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TriLaurent {
    terms: BTreeMap<Monomial, BigInt>,
}

/// Which variables `specialize` sets to 1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Specialization {
    pub z_to_one: bool,
    pub w_to_one: bool,
}

impl TriLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 0, 1)
    }

    pub fn monomial(a: i64, z: u32, w: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(a, z, w), c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, u32, u32), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for ((a, z, w), c) in terms {
            p.add_term(Monomial::new(a, z, w), c.into());
        }
        p
    }

    /// Adds `c` to the coefficient of `m`, dropping it if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: i64, z: u32, w: u32) -> BigInt {
        self.terms
            .get(&Monomial::new(a, z, w))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add(&self, other: &TriLaurent) -> TriLaurent {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &TriLaurent) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn negate(&self) -> TriLaurent {
        TriLaurent {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &TriLaurent) -> TriLaurent {
        self.add(&other.negate())
    }

    /// Product with the single term c·A^a Z^z W^w.
    pub fn mul_term(&self, a: i64, z: u32, w: u32, c: impl Into<BigInt>) -> TriLaurent {
        let c = c.into();
        if c.is_zero() {
            return TriLaurent::zero();
        }
        TriLaurent {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (Monomial::new(m.a + a, m.z + z, m.w + w), k * &c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TriLaurent) -> TriLaurent {
        let mut out = TriLaurent::zero();
        for (m, c) in &other.terms {
            out.add_assign(&self.mul_term(m.a, m.z, m.w, c.clone()));
        }
        out
    }

    pub fn max_a_degree(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.a)
    }

    pub fn min_a_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().map(|m| m.a)
    }

    /// All terms of A-degree `a`, keyed by (z, w).
    pub fn coefficient_slice(&self, a: i64) -> BTreeMap<(u32, u32), BigInt> {
        self.terms
            .range(Monomial::new(a, 0, 0)..=Monomial::new(a, u32::MAX, u32::MAX))
            .map(|(m, c)| ((m.z, m.w), c.clone()))
            .collect()
    }

    pub fn specialize(&self, s: Specialization) -> TriLaurent {
        let mut out = TriLaurent::zero();
        for (m, c) in &self.terms {
            let z = if s.z_to_one { 0 } else { m.z };
            let w = if s.w_to_one { 0 } else { m.w };
            out.add_term(Monomial::new(m.a, z, w), c.clone());
        }
        out
    }

    /// A ↦ A⁻¹.
    pub fn invert_a(&self) -> TriLaurent {
        TriLaurent {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(-m.a, m.z, m.w), c.clone()))
                .collect(),
        }
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<TriLaurent, PolyParseError> {
        text.parse()
    }
}

/// (−A² − A⁻²)^k, expanded by the binomial theorem.
pub fn delta_pow(k: u32) -> TriLaurent {
    let mut out = TriLaurent::zero();
    let sign = if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut binom = BigInt::one();
    for j in 0..=k {
        // C(k, j) A^{2(k-j)} A^{-2j}
        out.add_term(
            Monomial::new(2 * (k as i64) - 4 * j as i64, 0, 0),
            &sign * &binom,
        );
        binom = binom * (k - j) / (j + 1);
    }
    out
}

impl fmt::Display for TriLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*A^{}", m.a)?;
            if m.z > 0 {
                write!(f, "*Z^{}", m.z)?;
            }
            if m.w > 0 {
                write!(f, "*W^{}", m.w)?;
            }
        }
        Ok(())
    }
}

impl FromStr for TriLaurent {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyParseError::Empty);
        }
        if s == "0" {
            return Ok(TriLaurent::zero());
        }
        let mut out = TriLaurent::zero();
        for raw in s.split(" + ") {
            let bad = || PolyParseError::Term(raw.to_string());
            let mut parts = raw.trim().split('*');
            let c: BigInt = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let (mut a, mut z, mut w) = (0i64, 0u32, 0u32);
            for factor in parts {
                let (var, exp) = factor.split_once('^').ok_or_else(bad)?;
                match var {
                    "A" => a = exp.parse().map_err(|_| bad())?,
                    "Z" => z = exp.parse().map_err(|_| bad())?,
                    "W" => w = exp.parse().map_err(|_| bad())?,
                    _ => return Err(bad()),
                }
            }
            out.add_term(Monomial::new(a, z, w), c);
        }
        Ok(out)
    }
}

impl Serialize for TriLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TriLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
