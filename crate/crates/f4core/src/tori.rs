//! One-parameter tori attached to unipotent orbits, their composition with
//! stabilizer sub-tori, and Weyl-group matching of the composite.

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::orbits::{grading, Diagram, OrbitLabel};
use crate::rootsys::{bc_weyl_group, copair, enumerate_positive_roots, weyl_enumerate, CocharWeight, Root, WeylWord};

/// `G_O(α) = Σ εᵢnᵢ`.
pub fn g_value(d: &Diagram, a: &Root) -> i64 {
    i64::from(d.level(a))
}

fn root(s: &str) -> Root {
    s.parse().expect("static root literal")
}

/// Closed form: `r₁ = G(2342)`, `r₄ = G(1232)`, `r₂ = r₁ + 2r₄ − G(1122)`,
/// `r₃ = ½(r₂ + G(1242))`.
pub fn torus_closed_form(d: &Diagram) -> Result<CocharWeight> {
    let g = |s: &str| g_value(d, &root(s));
    let r1 = g("2342");
    let r4 = g("1232");
    let r2 = r1 + 2 * r4 - g("1122");
    let twice_r3 = r2 + g("1242");
    if twice_r3 % 2 != 0 {
        return Err(Error::TorusInconsistent {
            label: d.to_string(),
            detail: format!("r3 = {twice_r3}/2 is not an integer"),
        });
    }
    Ok(CocharWeight([r1, r2, twice_r3 / 2, r4]))
}

/// Solves `⟨α, r⟩ = level(α)` over every positive root (Levi roots have
/// level 0); fails if the system is inconsistent or underdetermined.
pub fn torus_linear_solve(d: &Diagram) -> Result<CocharWeight> {
    let pos = enumerate_positive_roots();
    let rows: Vec<Vec<Q>> = pos.iter().map(|a| (1..=4).map(|i| q(i64::from(copair(a, i)))).collect()).collect();
    let m = QMatrix::from_rows(&rows);
    let rhs: Vec<Q> = pos.iter().map(|a| q(g_value(d, a))).collect();
    let fail = |detail: &str| Error::TorusInconsistent { label: d.to_string(), detail: detail.to_string() };
    if m.rank() != 4 {
        return Err(fail("pairing system is degenerate"));
    }
    let x = m.solve(&rhs).ok_or_else(|| fail("overdetermined system is inconsistent"))?;
    let mut r = [0i64; 4];
    for (slot, v) in r.iter_mut().zip(&x) {
        if !v.is_integer() {
            return Err(fail("non-integral exponent"));
        }
        *slot = v.to_integer().try_into().map_err(|_| fail("exponent out of range"))?;
    }
    Ok(CocharWeight(r))
}

/// The torus `h_O`, computed both ways; disagreement is an error.
pub fn torus_of_orbit(d: &Diagram) -> Result<CocharWeight> {
    let a = torus_closed_form(d)?;
    let b = torus_linear_solve(d)?;
    if a != b {
        return Err(Error::TorusInconsistent {
            label: d.to_string(),
            detail: format!("closed form {a} differs from linear solve {b}"),
        });
    }
    Ok(a)
}

/// Checks `⟨α, h_O⟩ = n` for every `α ∈ U_Δ'(n)`; returns the number of roots.
pub fn check_torus_pairing(label: OrbitLabel) -> Result<usize> {
    let d = label.diagram();
    let r = torus_of_orbit(&d)?;
    let mut n = 0;
    for (level, roots) in grading(&d).levels() {
        for a in roots {
            if r.pair(a) != i64::from(level) {
                return Err(Error::TorusInconsistent {
                    label: label.to_string(),
                    detail: format!("root {a} has level {level} but pairs to {}", r.pair(a)),
                });
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn compose(a: &CocharWeight, b: &CocharWeight) -> CocharWeight {
    let mut r = a.0;
    for (x, y) in r.iter_mut().zip(b.0) {
        *x += y;
    }
    CocharWeight(r)
}

/// The first Weyl element (in enumeration order) carrying `r` onto the torus
/// of some orbit, with that orbit.
pub fn match_to_orbit(r: &CocharWeight) -> Option<(OrbitLabel, WeylWord)> {
    let table: Vec<(OrbitLabel, CocharWeight)> = OrbitLabel::ALL
        .iter()
        .map(|l| (*l, torus_of_orbit(&l.diagram()).expect("catalog tori are consistent")))
        .collect();
    for w in weyl_enumerate() {
        let image = w.apply_cochar(r);
        if let Some((l, _)) = table.iter().find(|(_, t)| *t == image) {
            return Some((*l, w.word().clone()));
        }
    }
    None
}

/// A stabilizer sub-torus embedded in F4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubTorusEntry {
    pub host: OrbitLabel,
    pub tag: &'static str,
    pub weight: CocharWeight,
    /// Roots carrying the host's character; the sub-torus must fix it.
    pub char_support: &'static [&'static str],
    /// A known conjugating Weyl word for the composite, if any.
    pub known_witness: Option<&'static str>,
}

impl SubTorusEntry {
    /// Support roots on which the sub-torus acts nontrivially.
    pub fn stabilizer_violations(&self) -> Vec<Root> {
        self.char_support.iter().map(|s| root(s)).filter(|a| self.weight.pair(a) != 0).collect()
    }

    pub fn composite(&self) -> CocharWeight {
        let host = torus_of_orbit(&self.host.diagram()).expect("catalog tori are consistent");
        compose(&host, &self.weight)
    }
}

pub fn sub_tori() -> &'static [SubTorusEntry] {
    use OrbitLabel::*;
    const TABLE: &[SubTorusEntry] = &[
        SubTorusEntry {
            host: C3,
            tag: "(2)",
            weight: CocharWeight([0, 1, 0, 0]),
            char_support: &["0001", "1110", "0120"],
            known_witness: None,
        },
        SubTorusEntry {
            host: B3,
            tag: "(3)",
            weight: CocharWeight([0, 0, 2, 2]),
            char_support: &["1000", "0111", "0120"],
            known_witness: Some("w[2]"),
        },
        SubTorusEntry {
            host: C3a1,
            tag: "(2)",
            weight: CocharWeight([0, 1, 0, 0]),
            char_support: &["0121", "1110", "1111"],
            known_witness: None,
        },
        SubTorusEntry {
            host: B2,
            tag: "(2|2)",
            weight: CocharWeight([0, 2, 1, 0]),
            char_support: &["1110", "0122"],
            known_witness: None,
        },
        SubTorusEntry {
            host: A2A1t,
            tag: "(2)",
            weight: CocharWeight([2, 2, 0, 1]),
            char_support: &["0122", "1121", "1220"],
            known_witness: Some("w[23]"),
        },
        SubTorusEntry {
            host: A2t,
            tag: "G2",
            weight: CocharWeight([6, 10, 6, 0]),
            char_support: &["0121", "1111"],
            known_witness: Some("w[234]"),
        },
        SubTorusEntry {
            host: A2t,
            tag: "G2(a1)",
            weight: CocharWeight([2, 4, 2, 0]),
            char_support: &["0121", "1111"],
            known_witness: None,
        },
    ];
    TABLE
}

pub fn sub_torus(host: OrbitLabel, tag: &str) -> Result<&'static SubTorusEntry> {
    sub_tori()
        .iter()
        .find(|e| e.host == host && e.tag.eq_ignore_ascii_case(tag))
        .ok_or_else(|| Error::Unknown { kind: "sub-torus", name: format!("{}∘{tag}", host.ascii()) })
}

/// Diagonal exponents of the torus attached to a partition in `Sp_{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTorus {
    pub size: usize,
    pub partition: Vec<u32>,
    /// Sorted in decreasing order.
    pub exponents: Vec<i64>,
}

/// Each part `p` contributes `p−1, p−3, …, 1−p`.
pub fn sp_partition_torus(size: usize, partition: &[u32]) -> Result<PartitionTorus> {
    let total: u32 = partition.iter().sum();
    let odd_ok = partition
        .iter()
        .filter(|p| *p % 2 == 1)
        .all(|p| partition.iter().filter(|x| *x == p).count() % 2 == 0);
    if !size.is_multiple_of(2) || total as usize != size || !odd_ok || partition.contains(&0) {
        return Err(Error::InvalidPartition(partition.to_vec()));
    }
    let mut exponents: Vec<i64> = partition
        .iter()
        .flat_map(|&p| (0..p).map(move |k| i64::from(p) - 1 - 2 * i64::from(k)))
        .collect();
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    let mut partition = partition.to_vec();
    partition.sort_unstable_by(|a, b| b.cmp(a));
    Ok(PartitionTorus { size, partition, exponents })
}

pub fn add_exponents(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `h_{(21²)}·diag(1,t,t⁻¹,1)` in `Sp₄`, returned with whether it already
/// equals `h_{(2²)}` as a diagonal.
pub fn sp4_composite() -> (Vec<i64>, bool) {
    let h = sp_partition_torus(4, &[2, 1, 1]).expect("valid partition");
    let c = add_exponents(&h.exponents, &[0, 1, -1, 0]);
    let target = sp_partition_torus(4, &[2, 2]).expect("valid partition");
    let same = c == target.exponents;
    (c, same)
}

/// `h_{(2³)}` times the embedded `SO₃` torus `diag(t²,1,t⁻²,t²,1,t⁻²)` in
/// `Sp₆`, and a signed permutation carrying it to `h_{(42)}`.
pub fn sp6_composite() -> (Vec<i64>, Option<usize>) {
    let h = sp_partition_torus(6, &[2, 2, 2]).expect("valid partition");
    let c = add_exponents(&h.exponents, &[2, 0, -2, 2, 0, -2]);
    let target = sp_partition_torus(6, &[4, 2]).expect("valid partition");
    let half: Vec<i64> = c[..3].to_vec();
    let want: Vec<i64> = target.exponents[..3].to_vec();
    let witness = bc_weyl_group(3).iter().position(|w| w.apply(&half) == want);
    (c, witness)
}
