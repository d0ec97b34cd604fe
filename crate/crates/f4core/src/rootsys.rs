//! The F4 root system: roots as coefficient vectors over the simple roots,
//! coroot pairings, simple reflections, Weyl words and the full Weyl group.
//!
//! Simple roots α₁, α₂ are long and α₃, α₄ short, with the double bond
//! α₂ ⇒ α₃. Long roots have squared length 2, short roots 1.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Cartan matrix with `CARTAN[i][j] = ⟨αᵢ, αⱼ^∨⟩`.
pub const CARTAN: [[i32; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]];

/// Twice the Gram matrix of the simple roots, so that every entry is an integer.
const GRAM2: [[i32; 4]; 4] = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]];

/// Number of roots of F4.
pub const NUM_ROOTS: usize = 48;

/// A root of F4, stored as its coefficients `(n₁,n₂,n₃,n₄)` over the simple roots.
///
/// Values of this type are always genuine roots. Ordering is by height, then
/// lexicographic on the coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root([i8; 4]);

impl Root {
    /// Builds a root from coefficients, failing if they are not one of the 48 roots.
    pub fn new(c: [i32; 4]) -> Result<Root> {
        if c.iter().any(|&x| !(-4..=4).contains(&x)) {
            return Err(Error::NotARoot(format!("{c:?}")));
        }
        let r = Root(c.map(|x| x as i8));
        if data().index.contains_key(&r.0) {
            Ok(r)
        } else {
            Err(Error::NotARoot(format_coeffs(&c)))
        }
    }

    /// Returns the root with these coefficients if there is one.
    pub fn try_from_coeffs(c: [i32; 4]) -> Option<Root> {
        Root::new(c).ok()
    }

    /// The simple root αᵢ for `i` in `1..=4`.
    pub fn simple(i: usize) -> Root {
        assert!((1..=4).contains(&i), "simple index {i}");
        let mut c = [0i8; 4];
        c[i - 1] = 1;
        Root(c)
    }

    pub fn coeffs(&self) -> [i32; 4] {
        self.0.map(i32::from)
    }

    pub fn height(&self) -> i32 {
        self.0.iter().map(|&x| i32::from(x)).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    /// Squared length: 2 for long roots, 1 for short roots.
    pub fn norm2(&self) -> i32 {
        inner2(self, self) / 2
    }

    pub fn is_long(&self) -> bool {
        self.norm2() == 2
    }

    /// Position in the canonical order of all 48 roots.
    pub fn index(&self) -> usize {
        data().index[&self.0]
    }

    /// The sum of two roots, if it is a root.
    pub fn add(&self, other: &Root) -> Option<Root> {
        let a = self.coeffs();
        let b = other.coeffs();
        Root::try_from_coeffs([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }

    /// `i·self + j·other`, if it is a root.
    pub fn combine(&self, i: i32, other: &Root, j: i32) -> Option<Root> {
        let a = self.coeffs();
        let b = other.coeffs();
        Root::try_from_coeffs([
            i * a[0] + j * b[0],
            i * a[1] + j * b[1],
            i * a[2] + j * b[2],
            i * a[3] + j * b[3],
        ])
    }
}

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.map(|x| -x))
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.height(), self.0).cmp(&(other.height(), other.0))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn format_coeffs(c: &[i32; 4]) -> String {
    if c.iter().all(|&x| x <= 0) && c.iter().any(|&x| x < 0) {
        format!("-{}{}{}{}", -c[0], -c[1], -c[2], -c[3])
    } else {
        format!("{}{}{}{}", c[0], c[1], c[2], c[3])
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coeffs(&self.coeffs()))
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Root {
    type Err = Error;

    /// Accepts `0121`, `-1100`, `-(1100)` and `(0121)`.
    fn from_str(s: &str) -> Result<Root> {
        let err = || Error::Parse { what: "root", input: s.to_string() };
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let digits: Vec<i32> = body
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as i32))
            .collect::<Option<_>>()
            .ok_or_else(err)?;
        if digits.len() != 4 {
            return Err(err());
        }
        let sign = if neg { -1 } else { 1 };
        Root::new([sign * digits[0], sign * digits[1], sign * digits[2], sign * digits[3]])
    }
}

/// Twice the inner product `(α, β)`, always an integer.
pub fn inner2(a: &Root, b: &Root) -> i32 {
    let x = a.coeffs();
    let y = b.coeffs();
    let mut s = 0;
    for i in 0..4 {
        for j in 0..4 {
            s += x[i] * GRAM2[i][j] * y[j];
        }
    }
    s
}

/// The coroot pairing `⟨α, αᵢ^∨⟩ = 2(α,αᵢ)/(αᵢ,αᵢ)` for `i` in `1..=4`.
pub fn copair(a: &Root, i: usize) -> i32 {
    copair_coeffs(&a.coeffs(), i)
}

fn copair_coeffs(c: &[i32; 4], i: usize) -> i32 {
    (0..4).map(|j| c[j] * CARTAN[j][i - 1]).sum()
}

/// The simple reflection `sᵢ(α) = α − ⟨α,αᵢ^∨⟩αᵢ`.
pub fn reflect(a: &Root, i: usize) -> Root {
    let mut c = a.coeffs();
    c[i - 1] -= copair_coeffs(&c, i);
    Root(c.map(|x| x as i8))
}

struct RootData {
    all: Vec<Root>,
    positive: Vec<Root>,
    index: HashMap<[i8; 4], usize>,
}

fn data() -> &'static RootData {
    static DATA: OnceLock<RootData> = OnceLock::new();
    DATA.get_or_init(|| {
        let mut seen: Vec<Root> = (1..=4).map(Root::simple).collect();
        let mut queue: VecDeque<Root> = seen.iter().copied().collect();
        while let Some(r) = queue.pop_front() {
            for i in 1..=4 {
                let s = reflect(&r, i);
                if !seen.contains(&s) {
                    seen.push(s);
                    queue.push_back(s);
                }
            }
        }
        seen.sort();
        let index = seen.iter().enumerate().map(|(k, r)| (r.0, k)).collect();
        let positive = seen.iter().copied().filter(Root::is_positive).collect();
        RootData { all: seen, positive, index }
    })
}

/// All 48 roots in canonical order.
pub fn all_roots() -> &'static [Root] {
    &data().all
}

/// The 24 positive roots in canonical order.
pub fn enumerate_positive_roots() -> &'static [Root] {
    &data().positive
}

/// Whether the coefficient vector is a root.
pub fn is_root(c: [i32; 4]) -> bool {
    Root::try_from_coeffs(c).is_some()
}

/// The largest `p` such that `β − pα` is a root.
pub fn string_down(a: &Root, b: &Root) -> i32 {
    let mut p = 0;
    while b.combine(1, a, -(p + 1)).is_some() {
        p += 1;
    }
    p
}

/// A cocharacter `t ↦ h(t^{r₁}, t^{r₂}, t^{r₃}, t^{r₄})` given by its exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocharWeight(pub [i64; 4]);

impl CocharWeight {
    pub const ZERO: CocharWeight = CocharWeight([0; 4]);

    /// The conjugation exponent `⟨α, r⟩ = Σ rᵢ⟨α, αᵢ^∨⟩`.
    pub fn pair(&self, a: &Root) -> i64 {
        (1..=4).map(|i| self.0[i - 1] * i64::from(copair(a, i))).sum()
    }

    /// The simple reflection acting on the coweight.
    pub fn reflect(&self, i: usize) -> CocharWeight {
        let mut r = self.0;
        let shift: i64 = (0..4).map(|j| r[j] * i64::from(CARTAN[i - 1][j])).sum();
        r[i - 1] -= shift;
        CocharWeight(r)
    }
}

impl fmt::Display for CocharWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        write!(f, "({},{},{},{})", r[0], r[1], r[2], r[3])
    }
}

impl FromStr for CocharWeight {
    type Err = Error;

    /// Accepts `6,10,7,4` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<CocharWeight> {
        let err = || Error::Parse { what: "weight", input: s.to_string() };
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<i64> = t
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err())?;
        let arr: [i64; 4] = parts.try_into().map_err(|_| err())?;
        Ok(CocharWeight(arr))
    }
}

/// A word in the simple reflections, written `w[i₁i₂…iₘ]`.
///
/// As a group element it is the product `s_{i₁}·s_{i₂}⋯s_{iₘ}`, so the last
/// letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord(pub Vec<u8>);

impl WeylWord {
    pub fn identity() -> WeylWord {
        WeylWord(Vec::new())
    }

    pub fn new(letters: &[u8]) -> Result<WeylWord> {
        match letters.iter().find(|&&i| !(1..=4).contains(&i)) {
            Some(&bad) => Err(Error::SimpleIndex(bad as usize)),
            None => Ok(WeylWord(letters.to_vec())),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    pub fn apply(&self, a: &Root) -> Root {
        self.0.iter().rev().fold(*a, |r, &i| reflect(&r, i as usize))
    }

    pub fn apply_cochar(&self, r: &CocharWeight) -> CocharWeight {
        self.0.iter().rev().fold(*r, |w, &i| w.reflect(i as usize))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("w[")?;
        for i in &self.0 {
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    /// Accepts `w[234]`, `[234]`, `234`, `w[]` and `e`.
    fn from_str(s: &str) -> Result<WeylWord> {
        let t = s.trim();
        if t == "e" {
            return Ok(WeylWord::identity());
        }
        let body = t.strip_prefix('w').unwrap_or(t);
        let body = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).unwrap_or(body);
        let letters: Vec<u8> = body
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse { what: "Weyl word", input: s.to_string() })?;
        WeylWord::new(&letters)
    }
}

/// Applies `w` to a root (the last letter acts first).
pub fn weyl_apply(w: &WeylWord, a: &Root) -> Root {
    w.apply(a)
}

/// Applies `w` to a cocharacter weight by the dual action.
pub fn weyl_apply_cochar(w: &WeylWord, r: &CocharWeight) -> CocharWeight {
    w.apply_cochar(r)
}

/// An element of the Weyl group: its permutation of the 48 roots together
/// with one shortest word representing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    perm: [u8; NUM_ROOTS],
    word: WeylWord,
}

impl WeylElement {
    pub fn word(&self) -> &WeylWord {
        &self.word
    }

    pub fn apply(&self, a: &Root) -> Root {
        all_roots()[self.perm[a.index()] as usize]
    }

    pub fn apply_cochar(&self, r: &CocharWeight) -> CocharWeight {
        self.word.apply_cochar(r)
    }

    /// Image index of the root with canonical index `k`.
    pub fn image_index(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        enumerate_positive_roots().iter().filter(|r| !self.apply(r).is_positive()).count()
    }

    fn from_word(word: &WeylWord) -> WeylElement {
        let mut perm = [0u8; NUM_ROOTS];
        for (k, r) in all_roots().iter().enumerate() {
            perm[k] = word.apply(r).index() as u8;
        }
        WeylElement { perm, word: word.clone() }
    }

    /// The element `self · other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut perm = [0u8; NUM_ROOTS];
        for k in 0..NUM_ROOTS {
            perm[k] = self.perm[other.perm[k] as usize];
        }
        let mut letters = self.word.0.clone();
        letters.extend_from_slice(&other.word.0);
        WeylElement { perm, word: WeylWord(letters) }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = [0u8; NUM_ROOTS];
        for k in 0..NUM_ROOTS {
            perm[self.perm[k] as usize] = k as u8;
        }
        WeylElement { perm, word: self.word.reversed() }
    }

    /// Whether two elements induce the same permutation of the roots.
    pub fn same_element(&self, other: &WeylElement) -> bool {
        self.perm == other.perm
    }
}

/// The element represented by a word.
pub fn weyl_element(word: &WeylWord) -> WeylElement {
    WeylElement::from_word(word)
}

/// All 1152 elements of the Weyl group, each with a shortest word.
///
/// Built by breadth-first search on right multiplication by simple
/// reflections; the order (by length, then discovery) is deterministic.
pub fn weyl_enumerate() -> &'static [WeylElement] {
    static GROUP: OnceLock<Vec<WeylElement>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let id = WeylElement::from_word(&WeylWord::identity());
        let mut seen: HashMap<[u8; NUM_ROOTS], usize> = HashMap::new();
        seen.insert(id.perm, 0);
        let mut out = vec![id];
        let gens: Vec<WeylElement> =
            (1..=4u8).map(|i| WeylElement::from_word(&WeylWord(vec![i]))).collect();
        let mut head = 0;
        while head < out.len() {
            let g = out[head].clone();
            head += 1;
            for s in &gens {
                let h = g.compose(s);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(h.perm) {
                    e.insert(out.len());
                    out.push(h);
                }
            }
        }
        out
    })
}

/// A signed permutation of `1..=n`: the Weyl group of type B or C acting on
/// diagonal torus exponents `(e₁,…,eₙ)` by `eᵢ ↦ signᵢ·e_{perm(i)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn apply(&self, e: &[i64]) -> Vec<i64> {
        self.perm.iter().zip(&self.signs).map(|(&p, &s)| i64::from(s) * e[p]).collect()
    }
}

/// All `2ⁿ·n!` signed permutations, in a fixed order.
pub fn bc_weyl_group(n: usize) -> Vec<SignedPermutation> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }
    let mut out = Vec::new();
    for p in perms(n) {
        for mask in 0..(1u32 << n) {
            let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermutation { perm: p.clone(), signs });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Root {
        s.parse().unwrap()
    }

    #[test]
    fn counts_and_lengths() {
        assert_eq!(all_roots().len(), 48);
        let pos = enumerate_positive_roots();
        assert_eq!(pos.len(), 24);
        assert_eq!(pos.iter().filter(|a| a.is_long()).count(), 12);
        assert_eq!(all_roots().iter().filter(|a| a.is_long()).count(), 24);
        assert_eq!(*pos.last().unwrap(), r("2342"));
        assert!(pos.contains(&r("1231")));
        assert!(pos.contains(&r("0122")));
        assert!(!is_root([1, 0, 1, 0]));
        assert!(Root::new([1, 0, 1, 0]).is_err());
    }

    #[test]
    fn canonical_order_is_height_then_lex() {
        let pos = enumerate_positive_roots();
        for w in pos.windows(2) {
            assert!((w[0].height(), w[0].coeffs()) < (w[1].height(), w[1].coeffs()));
        }
        assert_eq!(pos[0], r("0001"));
    }

    #[test]
    fn copair_examples() {
        assert_eq!(copair(&Root::simple(1), 1), 2);
        assert_eq!(copair(&Root::simple(2), 3), -2);
        assert_eq!(copair(&Root::simple(3), 2), -1);
        for i in 1..=4 {
            assert_eq!(copair(&r("2342"), i), if i == 1 { 1 } else { 0 });
        }
    }

    #[test]
    fn reflections_and_words() {
        assert_eq!(weyl_apply(&"w[1]".parse().unwrap(), &r("0100")), r("1100"));
        assert_eq!(weyl_apply(&"w[3]".parse().unwrap(), &r("0100")), r("0120"));
        assert_eq!(weyl_apply(&"w[4]".parse().unwrap(), &r("0100")), r("0100"));
    }

    #[test]
    fn cochar_examples() {
        let w234: WeylWord = "w[234]".parse().unwrap();
        assert_eq!(w234.apply_cochar(&CocharWeight([10, 18, 12, 4])), CocharWeight([10, 20, 14, 8]));
        let w2: WeylWord = "w[2]".parse().unwrap();
        assert_eq!(w2.apply_cochar(&CocharWeight([10, 20, 14, 8])), CocharWeight([10, 18, 14, 8]));
        let r = CocharWeight([3, -1, 4, 7]);
        assert_eq!(WeylWord::identity().apply_cochar(&r), r);
    }

    #[test]
    fn weyl_group_order_and_longest_element() {
        let g = weyl_enumerate();
        assert_eq!(g.len(), 1152);
        assert!(g[0].word().is_empty());
        let longest: Vec<_> = g.iter().filter(|w| w.length() == 24).collect();
        assert_eq!(longest.len(), 1);
        assert!(enumerate_positive_roots().iter().all(|a| !longest[0].apply(a).is_positive()));
        for w in g.iter().take(200) {
            assert_eq!(w.length(), w.word().len());
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(r("-(1100)"), -r("1100"));
        assert_eq!(r("-1100").to_string(), "-1100");
        assert!("12345".parse::<Root>().is_err());
        assert!("w[5]".parse::<WeylWord>().is_err());
        assert_eq!("w[]".parse::<WeylWord>().unwrap(), WeylWord::identity());
        assert_eq!("w[1234213]".parse::<WeylWord>().unwrap().to_string(), "w[1234213]");
        assert_eq!("6,10,7,4".parse::<CocharWeight>().unwrap(), CocharWeight([6, 10, 7, 4]));
    }

    #[test]
    fn bc_group_order() {
        assert_eq!(bc_weyl_group(3).len(), 48);
        assert_eq!(bc_weyl_group(2).len(), 8);
    }
}
