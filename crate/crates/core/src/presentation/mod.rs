//! Countable graphs given by an adjacency oracle on the naturals.
//!
//! Every family is a pure function of two vertex indices and its parameters.
//! Truncating to the first `n` naturals gives a finite [`Graph`].

mod classify;
mod probe;
mod spanning;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use classify::{classify_mb, Classification, MbVerdict};
pub use probe::{
    check_extension_pairs, check_property_bounded, extension_witness, ProbeFailure, PropertyKind, PropertyReport,
    WitnessOutcome,
};
pub use spanning::{spanning_rado, spanning_rado_with, RadoConstruction, Requirement, DEFAULT_MAX_REQUIREMENT};

/// Built-in countable graphs and the operations combining them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `i < j` adjacent iff bit `i` of `j` is set.
    RadoBit,
    /// Independent `a_0..a_{n-1}` followed by an infinite clique split
    /// round-robin into parts `C_0..C_{n-1}`; `c ∈ C_i` sees `a_j` iff `i ≠ j`.
    Rs(usize),
    KOmega,
    Null,
    /// Infinitely many infinite cliques; vertex `k` is the Cantor pair `(x, y)`
    /// and lies in clique `x`.
    IOmegaKOmega,
    /// Complement of `K_1 ⊔ K_2 ⊔ K_3 ⊔ …`, blocks laid out consecutively.
    UnionCliquesComplement,
    /// Integers enumerated `0, 1, −1, 2, −2, …`, adjacent when they differ by 1.
    TwoWayPath,
    Complement(Box<Family>),
    /// Lexicographic product `P[Q]` over Cantor-paired indices.
    Lex(Box<Family>, Box<Family>),
}

/// Inverse of the Cantor pairing `(x, y) ↦ (x+y)(x+y+1)/2 + y`.
pub fn cantor_unpair(k: usize) -> (usize, usize) {
    let mut w = ((8.0 * k as f64 + 1.0).sqrt() as usize).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    let y = k - w * (w + 1) / 2;
    (w - y, y)
}

/// Block of vertex `k` in the clique-union layout (block `b` has `b + 1` vertices).
pub(crate) fn clique_block(k: usize) -> usize {
    let mut b = (((8.0 * k as f64 + 1.0).sqrt() as usize).saturating_sub(1)) / 2;
    while (b + 1) * (b + 2) / 2 <= k {
        b += 1;
    }
    while b * (b + 1) / 2 > k {
        b -= 1;
    }
    b
}

pub(crate) fn zigzag(k: usize) -> i64 {
    if k % 2 == 1 {
        k.div_ceil(2) as i64
    } else {
        -((k / 2) as i64)
    }
}

impl Family {
    /// The adjacency oracle. Irreflexive and symmetric for every family.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        match self {
            Family::RadoBit => {
                let (lo, hi) = (i.min(j), i.max(j));
                lo < usize::BITS as usize && hi >> lo & 1 == 1
            }
            Family::Rs(n) => {
                let n = *n;
                match (i < n, j < n) {
                    (true, true) => false,
                    (false, false) => true,
                    (true, false) => (j - n) % n != i,
                    (false, true) => (i - n) % n != j,
                }
            }
            Family::KOmega => true,
            Family::Null => false,
            Family::IOmegaKOmega => cantor_unpair(i).0 == cantor_unpair(j).0,
            Family::UnionCliquesComplement => clique_block(i) != clique_block(j),
            Family::TwoWayPath => (zigzag(i) - zigzag(j)).abs() == 1,
            Family::Complement(p) => !p.adjacent(i, j),
            Family::Lex(p, q) => {
                let (a, x) = cantor_unpair(i);
                let (b, y) = cantor_unpair(j);
                p.adjacent(a, b) || (a == b && q.adjacent(x, y))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Family::Rs(n) if *n < 3 => Err(Error::BadParams(format!("rs needs n >= 3, got {n}"))),
            Family::Complement(p) => p.validate(),
            Family::Lex(p, q) => {
                p.validate()?;
                q.validate()
            }
            _ => Ok(()),
        }
    }

    fn declared_properties(&self) -> Vec<String> {
        let props: &[&str] = match self {
            Family::RadoBit => &["rado", "triangle", "cocone", "bit-model"],
            Family::Rs(_) => &["hh", "no-triangle"],
            Family::KOmega => &["triangle"],
            Family::Null => &["cocone"],
            Family::IOmegaKOmega => &["cocone"],
            Family::UnionCliquesComplement => &["triangle"],
            Family::TwoWayPath => &["not-hh"],
            Family::Complement(_) | Family::Lex(..) => &[],
        };
        props.iter().map(|s| s.to_string()).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::RadoBit => f.write_str("rado_bit"),
            Family::Rs(n) => write!(f, "rs:{n}"),
            Family::KOmega => f.write_str("k_omega"),
            Family::Null => f.write_str("null"),
            Family::IOmegaKOmega => f.write_str("i_omega_k_omega"),
            Family::UnionCliquesComplement => f.write_str("union_cliques_complement"),
            Family::TwoWayPath => f.write_str("two_way_path"),
            Family::Complement(p) => write!(f, "complement:{p}"),
            Family::Lex(p, q) => write!(f, "lex:{p},{q}"),
        }
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.s))
    }

    fn ident(&mut self) -> &str {
        let rest = &self.s[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn eat(&mut self, c: char) -> bool {
        if self.s[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn family(&mut self) -> Result<Family> {
        let start = self.pos;
        let name = self.ident().to_string();
        Ok(match name.as_str() {
            "rado_bit" | "rado" => Family::RadoBit,
            "k_omega" => Family::KOmega,
            "null" | "i_omega" => Family::Null,
            "i_omega_k_omega" => Family::IOmegaKOmega,
            "union_cliques_complement" => Family::UnionCliquesComplement,
            "two_way_path" => Family::TwoWayPath,
            "rs" => {
                if !self.eat(':') {
                    return Err(self.err("expected ':' after rs"));
                }
                let digits = self.ident();
                let n = digits
                    .parse::<usize>()
                    .map_err(|_| Error::BadParams(format!("rs parameter {digits:?} is not a count")))?;
                Family::Rs(n)
            }
            "complement" => {
                if !self.eat(':') {
                    return Err(self.err("expected ':' after complement"));
                }
                Family::Complement(Box::new(self.family()?))
            }
            "lex" => {
                if !self.eat(':') {
                    return Err(self.err("expected ':' after lex"));
                }
                let p = self.family()?;
                if !self.eat(',') {
                    return Err(self.err("expected ',' between lex factors"));
                }
                let q = self.family()?;
                Family::Lex(Box::new(p), Box::new(q))
            }
            _ => {
                self.pos = start;
                return Err(self.err(&format!("unknown family {name:?}")));
            }
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.trim(), pos: 0 };
        let fam = p.family()?;
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        fam.validate()?;
        Ok(fam)
    }
}

/// A validated family together with metadata used only in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(with = "family_string")]
    pub family: Family,
    /// Properties the family is known to have. Verifiers never read these.
    pub declared: Vec<String>,
}

mod family_string {
    use super::Family;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Family, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(f)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Family, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl Presentation {
    pub fn new(family: Family) -> Result<Self> {
        family.validate()?;
        let declared = family.declared_properties();
        Ok(Self { family, declared })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn name(&self) -> String {
        self.family.to_string()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.family.adjacent(i, j)
    }

    /// Induced subgraph on `0..n`.
    pub fn truncate(&self, n: usize) -> Graph {
        Graph::from_fn(n, |i, j| self.family.adjacent(i, j))
    }

    pub fn complement(&self) -> Result<Self> {
        Self::new(Family::Complement(Box::new(self.family.clone())))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family.fmt(f)
    }
}
