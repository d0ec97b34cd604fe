//! The sixteen unipotent orbits of F4: weighted diagrams, the induced
//! grading of the positive roots, dimensions, stabilizer types and the
//! closure order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::{enumerate_positive_roots, Root};

/// Node labels `(ε₁,ε₂,ε₃,ε₄)` of a weighted Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram(pub [u8; 4]);

impl Diagram {
    /// `Σ εᵢnᵢ`.
    pub fn level(&self, a: &Root) -> i32 {
        self.0.iter().zip(a.coeffs()).map(|(&e, n)| i32::from(e) * n).sum()
    }

    /// Simple roots labelled zero; they generate the Levi of `P_Δ`.
    pub fn zero_nodes(&self) -> Vec<usize> {
        (1..=4).filter(|&i| self.0[i - 1] == 0).collect()
    }

    pub fn has_label_one(&self) -> bool {
        self.0.contains(&1)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Diagram> {
        let err = || Error::Parse { what: "diagram", input: s.to_string() };
        let digits: Vec<u8> = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|c| c.to_digit(10).filter(|&d| d <= 2).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(err)?;
        let arr: [u8; 4] = digits.try_into().map_err(|_| err())?;
        Ok(Diagram(arr))
    }
}

/// Positive roots with positive level, grouped by level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    levels: BTreeMap<u32, Vec<Root>>,
}

impl Grading {
    /// `U_Δ'(n)`, in canonical order.
    pub fn level(&self, n: u32) -> &[Root] {
        self.levels.get(&n).map_or(&[], Vec::as_slice)
    }

    /// `U_Δ(n)`: all roots of level at least `n`.
    pub fn at_least(&self, n: u32) -> Vec<Root> {
        let mut out: Vec<Root> = self.levels.range(n..).flat_map(|(_, v)| v.iter().copied()).collect();
        out.sort();
        out
    }

    /// All of `U_Δ`.
    pub fn roots(&self) -> Vec<Root> {
        self.at_least(1)
    }

    /// Nonempty levels with their roots.
    pub fn levels(&self) -> impl Iterator<Item = (u32, &[Root])> {
        self.levels.iter().map(|(k, v)| (*k, v.as_slice()))
    }
}

pub fn grading(d: &Diagram) -> Grading {
    let mut levels: BTreeMap<u32, Vec<Root>> = BTreeMap::new();
    for r in enumerate_positive_roots() {
        let l = d.level(r);
        if l > 0 {
            levels.entry(l as u32).or_default().push(*r);
        }
    }
    Grading { levels }
}

/// `dim U_Δ(2) + ½|U_Δ'(1)|`.
pub fn half_dim(d: &Diagram) -> usize {
    let g = grading(d);
    g.at_least(2).len() + g.level(1).len() / 2
}

/// Bala-Carter labels, in increasing orbit dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitLabel {
    Zero,
    A1,
    A1t,
    A1A1t,
    A2,
    A2t,
    A2A1t,
    B2,
    A2tA1,
    C3a1,
    F4a3,
    B3,
    C3,
    F4a2,
    F4a1,
    F4,
}

impl OrbitLabel {
    pub const ALL: [OrbitLabel; 16] = [
        OrbitLabel::Zero,
        OrbitLabel::A1,
        OrbitLabel::A1t,
        OrbitLabel::A1A1t,
        OrbitLabel::A2,
        OrbitLabel::A2t,
        OrbitLabel::A2A1t,
        OrbitLabel::B2,
        OrbitLabel::A2tA1,
        OrbitLabel::C3a1,
        OrbitLabel::F4a3,
        OrbitLabel::B3,
        OrbitLabel::C3,
        OrbitLabel::F4a2,
        OrbitLabel::F4a1,
        OrbitLabel::F4,
    ];

    pub fn nonzero() -> impl Iterator<Item = OrbitLabel> {
        OrbitLabel::ALL[1..].iter().copied()
    }

    pub fn name(self) -> &'static str {
        use OrbitLabel::*;
        match self {
            Zero => "0",
            A1 => "A₁",
            A1t => "Ã₁",
            A1A1t => "A₁+Ã₁",
            A2 => "A₂",
            A2t => "Ã₂",
            A2A1t => "A₂+Ã₁",
            B2 => "B₂",
            A2tA1 => "Ã₂+A₁",
            C3a1 => "C₃(a₁)",
            F4a3 => "F₄(a₃)",
            B3 => "B₃",
            C3 => "C₃",
            F4a2 => "F₄(a₂)",
            F4a1 => "F₄(a₁)",
            F4 => "F₄",
        }
    }

    pub fn ascii(self) -> &'static str {
        use OrbitLabel::*;
        match self {
            Zero => "0",
            A1 => "A1",
            A1t => "A1t",
            A1A1t => "A1+A1t",
            A2 => "A2",
            A2t => "A2t",
            A2A1t => "A2+A1t",
            B2 => "B2",
            A2tA1 => "A2t+A1",
            C3a1 => "C3(a1)",
            F4a3 => "F4(a3)",
            B3 => "B3",
            C3 => "C3",
            F4a2 => "F4(a2)",
            F4a1 => "F4(a1)",
            F4 => "F4",
        }
    }

    pub fn diagram(self) -> Diagram {
        use OrbitLabel::*;
        Diagram(match self {
            Zero => [0, 0, 0, 0],
            A1 => [1, 0, 0, 0],
            A1t => [0, 0, 0, 1],
            A1A1t => [0, 1, 0, 0],
            A2 => [2, 0, 0, 0],
            A2t => [0, 0, 0, 2],
            A2A1t => [0, 0, 1, 0],
            B2 => [2, 0, 0, 1],
            A2tA1 => [0, 1, 0, 1],
            C3a1 => [1, 0, 1, 0],
            F4a3 => [0, 2, 0, 0],
            B3 => [2, 2, 0, 0],
            C3 => [1, 0, 1, 2],
            F4a2 => [0, 2, 0, 2],
            F4a1 => [2, 2, 0, 2],
            F4 => [2, 2, 2, 2],
        })
    }

    /// Reductive type of the connected centralizer.
    pub fn stabilizer_type(self) -> &'static str {
        use OrbitLabel::*;
        match self {
            Zero => "F4",
            A1 => "C3",
            A1t => "A3",
            A1A1t => "A1+A1",
            A2 => "A2",
            A2t => "G2",
            A2A1t => "A1",
            B2 => "A1+A1",
            A2tA1 => "A1",
            C3a1 => "A1",
            F4a3 | F4a2 | F4a1 | F4 => "finite",
            B3 => "A1",
            C3 => "A1",
        }
    }

    pub fn provenance(self) -> Provenance {
        use OrbitLabel::*;
        use Source::*;
        let diagram = match self {
            B2 | B3 | F4a1 | A1A1t | A2tA1 | C3a1 | C3 | A2t | A1 => Displayed,
            _ => Derived,
        };
        let half_dim = match self {
            Zero | F4a3 | F4a2 | F4a1 | F4 => Derived,
            _ => Displayed,
        };
        let stabilizer = match self {
            F4a1 | A1A1t | A2tA1 | C3a1 | C3 | A2A1t | A2 => Displayed,
            _ => Derived,
        };
        Provenance { diagram, half_dim, stabilizer }
    }

    pub fn record(self) -> OrbitRecord {
        let d = self.diagram();
        let h = half_dim(&d);
        OrbitRecord {
            label: self,
            diagram: d,
            dim: 2 * h,
            half_dim: h,
            stabilizer: self.stabilizer_type(),
            provenance: self.provenance(),
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn normalize(s: &str) -> String {
    let mut out = String::new();
    let mut tilde = false;
    let s = s.trim().replace("\\widetilde", "~").replace("\\tilde", "~");
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let c = match c {
            '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10).unwrap(),
            _ => c,
        };
        match c {
            'Ã' | 'ã' => {
                out.push('a');
                tilde = true;
            }
            // Directly after a digit, `~` marks that digit (`A2~`).
            '~' if out.ends_with(|c: char| c.is_ascii_digit()) => out.push('t'),
            '~' => tilde = true,
            '\u{303}' => tilde = true,
            '(' | ')' | '+' | '_' | ' ' | '{' | '}' | '\\' => {}
            c if c.is_ascii_digit() => {
                out.push(c);
                let next_is_combining = chars.peek() == Some(&'\u{303}');
                if tilde || next_is_combining {
                    out.push('t');
                    tilde = false;
                }
            }
            c => out.push(c.to_ascii_lowercase()),
        }
    }
    out
}

impl FromStr for OrbitLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<OrbitLabel> {
        let key = normalize(s);
        if key == "0" || key == "zero" || key == "trivial" {
            return Ok(OrbitLabel::Zero);
        }
        OrbitLabel::ALL
            .iter()
            .copied()
            .find(|l| normalize(l.ascii()) == key || normalize(l.name()) == key)
            .ok_or_else(|| Error::UnknownOrbit(s.to_string()))
    }
}

/// Where a catalog value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Tabulated reference value.
    Displayed,
    /// Fixed here from other tabulated data and checked for consistency.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub diagram: Source,
    pub half_dim: Source,
    pub stabilizer: Source,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub label: OrbitLabel,
    pub diagram: Diagram,
    pub dim: usize,
    pub half_dim: usize,
    pub stabilizer: &'static str,
    pub provenance: Provenance,
}

pub fn catalog() -> Vec<OrbitRecord> {
    OrbitLabel::ALL.iter().map(|l| l.record()).collect()
}

pub fn orbits_with_half_dim(k: usize) -> Vec<OrbitRecord> {
    catalog().into_iter().filter(|r| r.half_dim == k).collect()
}

/// Looks up an orbit by its diagram.
pub fn orbit_of_diagram(d: &Diagram) -> Option<OrbitLabel> {
    OrbitLabel::ALL.iter().copied().find(|l| l.diagram() == *d)
}

/// Cover relations of the closure order.
pub const HASSE: [(OrbitLabel, OrbitLabel); 18] = {
    use OrbitLabel::*;
    [
        (Zero, A1),
        (A1, A1t),
        (A1t, A1A1t),
        (A1A1t, A2),
        (A1A1t, A2t),
        (A2, A2A1t),
        (A2t, A2tA1),
        (A2A1t, B2),
        (A2A1t, A2tA1),
        (B2, C3a1),
        (A2tA1, C3a1),
        (C3a1, F4a3),
        (F4a3, B3),
        (F4a3, C3),
        (B3, F4a2),
        (C3, F4a2),
        (F4a2, F4a1),
        (F4a1, F4),
    ]
};

/// Whether `a` lies in the closure of `b`.
pub fn closure_leq(a: OrbitLabel, b: OrbitLabel) -> bool {
    if a == b {
        return true;
    }
    let mut stack = vec![a];
    let mut seen = vec![a];
    while let Some(x) = stack.pop() {
        for &(lo, hi) in &HASSE {
            if lo == x && hi != x && !seen.contains(&hi) {
                if hi == b {
                    return true;
                }
                seen.push(hi);
                stack.push(hi);
            }
        }
    }
    false
}
