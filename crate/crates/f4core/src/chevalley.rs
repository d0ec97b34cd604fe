//! Chevalley basis of the F4 Lie algebra and the adjoint Chevalley group.
//!
//! Structure constants follow the extraspecial-pair algorithm: every
//! extraspecial pair gets `N = +(p+1)` and all other constants are derived
//! from the four-root and three-root identities. Group elements are exact
//! 52×52 rational matrices on the basis `{e_α} ∪ {h₁..h₄}`, roots first in
//! canonical order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::rootsys::{all_roots, copair, enumerate_positive_roots, string_down, Root, NUM_ROOTS};

/// Dimension of the Lie algebra.
pub const DIM: usize = 52;

/// Structure constants `N_{α,β}` with `[e_α, e_β] = N_{α,β} e_{α+β}`.
pub struct StructureConstants {
    table: Vec<i32>,
    extraspecial: Vec<(Root, Root)>,
}

impl StructureConstants {
    /// `N_{α,β}`, or 0 when `α+β` is not a root.
    pub fn get(&self, a: &Root, b: &Root) -> i32 {
        self.table[a.index() * NUM_ROOTS + b.index()]
    }

    /// The extraspecial pairs `(α, β)`, one per non-simple positive root.
    pub fn extraspecial_pairs(&self) -> &[(Root, Root)] {
        &self.extraspecial
    }

    /// All `(α, β, α+β, N)` with `α+β` a root, in canonical order.
    pub fn entries(&self) -> Vec<(Root, Root, Root, i32)> {
        let mut out = Vec::new();
        for a in all_roots() {
            for b in all_roots() {
                if let Some(c) = a.add(b) {
                    out.push((*a, *b, c, self.get(a, b)));
                }
            }
        }
        out
    }
}

/// The structure-constant table, computed once.
pub fn structure_constants() -> &'static StructureConstants {
    static SC: OnceLock<StructureConstants> = OnceLock::new();
    SC.get_or_init(build_structure_constants)
}

fn build_structure_constants() -> StructureConstants {
    let pos = enumerate_positive_roots();
    let mut table: BTreeMap<(Root, Root), i32> = BTreeMap::new();
    let mut extraspecial = Vec::new();
    for xi in pos {
        let mut special: Vec<(Root, Root)> = pos
            .iter()
            .filter_map(|r| {
                let s = xi.combine(1, r, -1)?;
                (s.is_positive() && *r < s).then_some((*r, s))
            })
            .collect();
        if special.is_empty() {
            continue;
        }
        special.sort();
        let (a, b) = special[0];
        table.insert((a, b), string_down(&a, &b) + 1);
        extraspecial.push((a, b));
        let n_ab = table[&(a, b)];
        for &(r, s) in &special[1..] {
            let mut acc = Q::zero();
            if let Some(sa) = s.combine(1, &a, -1) {
                let term = q(i64::from(n_any(&table, &s, &-a) * n_any(&table, &r, &-b)));
                acc += term / q(i64::from(sa.norm2()));
            }
            if let Some(ra) = r.combine(1, &a, -1) {
                let term = q(i64::from(n_any(&table, &-a, &r) * n_any(&table, &s, &-b)));
                acc += term / q(i64::from(ra.norm2()));
            }
            let n = acc * q(i64::from(xi.norm2())) / q(i64::from(n_ab));
            table.insert((r, s), to_int(&n));
        }
    }
    let mut full = vec![0i32; NUM_ROOTS * NUM_ROOTS];
    for a in all_roots() {
        for b in all_roots() {
            if a.add(b).is_some() {
                full[a.index() * NUM_ROOTS + b.index()] = n_any(&table, a, b);
            }
        }
    }
    StructureConstants { table: full, extraspecial }
}

fn to_int(x: &Q) -> i32 {
    assert!(x.is_integer(), "non-integral structure constant {x}");
    x.to_integer().to_i32().expect("structure constant fits in i32")
}

/// `N_{a,b}` for arbitrary roots, from the positive table (sums of lower height
/// must already be present).
fn n_any(table: &BTreeMap<(Root, Root), i32>, a: &Root, b: &Root) -> i32 {
    let c = a.add(b).expect("n_any called on a non-root sum");
    match (a.is_positive(), b.is_positive()) {
        (true, true) => {
            if a < b {
                table[&(*a, *b)]
            } else {
                -table[&(*b, *a)]
            }
        }
        (false, false) => -n_any(table, &-*a, &-*b),
        (false, true) => -n_any(table, b, a),
        (true, false) => {
            if c.is_positive() {
                let v = -c.norm2() * n_any(table, &-*b, &c);
                assert_eq!(v % a.norm2(), 0);
                v / a.norm2()
            } else {
                let v = c.norm2() * n_any(table, &-c, a);
                assert_eq!(v % b.norm2(), 0);
                v / b.norm2()
            }
        }
    }
}

/// A sparse element of the Lie algebra: basis index to integer coefficient.
pub type LieVec = BTreeMap<usize, i64>;

fn h_index(i: usize) -> usize {
    NUM_ROOTS + i - 1
}

/// Coefficients of `h_α = [e_α, e_{−α}]` in the basis `h₁..h₄`.
pub fn coroot_coeffs(a: &Root) -> [i64; 4] {
    let c = a.coeffs();
    let na = a.norm2();
    let mut out = [0i64; 4];
    for i in 1..=4 {
        let v = c[i - 1] * Root::simple(i).norm2();
        assert_eq!(v % na, 0);
        out[i - 1] = i64::from(v / na);
    }
    out
}

/// The Lie bracket of two basis elements.
pub fn bracket_basis(x: usize, y: usize) -> LieVec {
    let mut out = LieVec::new();
    let roots = all_roots();
    match (x < NUM_ROOTS, y < NUM_ROOTS) {
        (true, true) => {
            let (a, b) = (roots[x], roots[y]);
            if a == -b {
                for (i, c) in coroot_coeffs(&a).iter().enumerate() {
                    if *c != 0 {
                        out.insert(h_index(i + 1), *c);
                    }
                }
            } else if let Some(s) = a.add(&b) {
                out.insert(s.index(), i64::from(structure_constants().get(&a, &b)));
            }
        }
        (false, true) => {
            let c = copair(&roots[y], x - NUM_ROOTS + 1);
            if c != 0 {
                out.insert(y, i64::from(c));
            }
        }
        (true, false) => {
            let c = copair(&roots[x], y - NUM_ROOTS + 1);
            if c != 0 {
                out.insert(x, -i64::from(c));
            }
        }
        (false, false) => {}
    }
    out
}

/// Bilinear extension of the bracket to sparse vectors.
pub fn bracket(x: &LieVec, y: &LieVec) -> LieVec {
    let mut out = LieVec::new();
    for (&i, &a) in x {
        for (&j, &b) in y {
            for (k, c) in bracket_basis(i, j) {
                *out.entry(k).or_insert(0) += a * b * c;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Basis vector `e_α`.
pub fn e(a: &Root) -> LieVec {
    LieVec::from([(a.index(), 1)])
}

/// `ad e_α` as sparse triples `(row, col, value)`.
fn ad_root(a: &Root) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for j in 0..DIM {
        for (i, v) in bracket_basis(a.index(), j) {
            out.push((i, j, v));
        }
    }
    out
}

/// Powers `(ad e_α)^k / k!` for `k ≥ 1` until the power vanishes, exact.
fn ad_exp_terms(a: &Root) -> &'static [Vec<(usize, usize, Q)>] {
    static TERMS: OnceLock<Vec<Vec<Vec<(usize, usize, Q)>>>> = OnceLock::new();
    let all = TERMS.get_or_init(|| {
        all_roots()
            .iter()
            .map(|r| {
                let ad = ad_root(r);
                let mut dense = vec![0i64; DIM * DIM];
                for &(i, j, v) in &ad {
                    dense[i * DIM + j] = v;
                }
                let mut power = dense.clone();
                let mut out = Vec::new();
                let mut fact = 1i64;
                let mut k = 1;
                while power.iter().any(|&v| v != 0) {
                    fact *= k;
                    out.push(
                        power
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v != 0)
                            .map(|(idx, &v)| (idx / DIM, idx % DIM, Q::new(BigInt::from(v), BigInt::from(fact))))
                            .collect(),
                    );
                    power = mul_i64(&dense, &power);
                    k += 1;
                }
                out
            })
            .collect()
    });
    &all[a.index()]
}

fn mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; DIM * DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            let x = a[i * DIM + k];
            if x == 0 {
                continue;
            }
            for j in 0..DIM {
                c[i * DIM + j] += x * b[k * DIM + j];
            }
        }
    }
    c
}

/// Smallest `k` with `(ad e_α)^k = 0`.
pub fn nilpotency_index(a: &Root) -> usize {
    ad_exp_terms(a).len() + 1
}

/// An element of the adjoint group: an exact 52×52 rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjointElement {
    m: Vec<Q>,
}

impl fmt::Debug for AdjointElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nnz = self.m.iter().filter(|x| !x.is_zero()).count();
        write!(f, "AdjointElement({nnz} nonzero entries)")
    }
}

impl AdjointElement {
    pub fn identity() -> AdjointElement {
        let mut m = vec![Q::zero(); DIM * DIM];
        for i in 0..DIM {
            m[i * DIM + i] = Q::one();
        }
        AdjointElement { m }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.m[i * DIM + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == AdjointElement::identity()
    }

    /// Matrix product, skipping zero entries.
    pub fn mul(&self, other: &AdjointElement) -> AdjointElement {
        let mut c = vec![Q::zero(); DIM * DIM];
        for i in 0..DIM {
            for k in 0..DIM {
                let x = &self.m[i * DIM + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..DIM {
                    let y = &other.m[k * DIM + j];
                    if !y.is_zero() {
                        c[i * DIM + j] += x * y;
                    }
                }
            }
        }
        AdjointElement { m: c }
    }

    /// Image of a sparse Lie algebra vector.
    pub fn apply(&self, v: &LieVec) -> BTreeMap<usize, Q> {
        let mut out = BTreeMap::new();
        for (&j, &c) in v {
            for i in 0..DIM {
                let x = &self.m[i * DIM + j];
                if !x.is_zero() {
                    *out.entry(i).or_insert_with(Q::zero) += x * q(c);
                }
            }
        }
        out.retain(|_, v: &mut Q| !v.is_zero());
        out
    }

    /// Image of `e_α` as a list of (basis index, coefficient).
    pub fn column(&self, j: usize) -> Vec<(usize, Q)> {
        (0..DIM).filter_map(|i| {
            let x = &self.m[i * DIM + j];
            (!x.is_zero()).then(|| (i, x.clone()))
        })
        .collect()
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix { rows: DIM, cols: DIM, data: self.m.clone() }
    }

    pub fn det(&self) -> Q {
        self.to_qmatrix().det()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Option<AdjointElement> {
        let mut aug = QMatrix::zeros(DIM, 2 * DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                aug.set(i, j, self.m[i * DIM + j].clone());
            }
            aug.set(i, DIM + i, Q::one());
        }
        let piv = aug.rref();
        if piv.len() < DIM || piv[DIM - 1] != DIM - 1 {
            return None;
        }
        let mut m = vec![Q::zero(); DIM * DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                m[i * DIM + j] = aug.get(i, DIM + j).clone();
            }
        }
        Some(AdjointElement { m })
    }

    /// Whether the matrix is unipotent, i.e. `(g − 1)^52 = 0`.
    pub fn is_unipotent(&self) -> bool {
        let mut n = self.clone();
        for i in 0..DIM {
            n.m[i * DIM + i] -= Q::one();
        }
        let mut p = n.clone();
        for _ in 0..6 {
            p = p.mul(&p);
            if p.m.iter().all(Zero::is_zero) {
                return true;
            }
        }
        p.m.iter().all(Zero::is_zero)
    }
}

impl std::ops::Mul for &AdjointElement {
    type Output = AdjointElement;
    fn mul(self, rhs: &AdjointElement) -> AdjointElement {
        AdjointElement::mul(self, rhs)
    }
}

/// The root element `x_α(t) = exp(t·ad e_α)`.
pub fn unip(a: &Root, t: &Q) -> AdjointElement {
    let mut g = AdjointElement::identity();
    if t.is_zero() {
        return g;
    }
    let mut tk = Q::one();
    for term in ad_exp_terms(a) {
        tk *= t;
        for (i, j, v) in term {
            g.m[i * DIM + j] += &tk * v;
        }
    }
    g
}

/// The torus element `h(t₁,t₂,t₃,t₄)`, scaling `e_α` by `∏ tᵢ^{⟨α,αᵢ^∨⟩}`.
pub fn torus(t: &[Q; 4]) -> Result<AdjointElement> {
    if let Some(i) = t.iter().position(Zero::is_zero) {
        return Err(Error::ZeroParameter(i + 1));
    }
    let mut g = AdjointElement::identity();
    for (k, a) in all_roots().iter().enumerate() {
        g.m[k * DIM + k] = torus_character(a, t);
    }
    Ok(g)
}

/// `∏ tᵢ^{⟨α,αᵢ^∨⟩}`.
pub fn torus_character(a: &Root, t: &[Q; 4]) -> Q {
    let mut x = Q::one();
    for i in 1..=4 {
        let c = copair(a, i);
        let base = if c < 0 { t[i - 1].recip() } else { t[i - 1].clone() };
        for _ in 0..c.abs() {
            x *= &base;
        }
    }
    x
}

/// The Weyl representative `x_{αᵢ}(1) x_{−αᵢ}(−1) x_{αᵢ}(1)`.
pub fn weyl_rep(i: usize) -> Result<AdjointElement> {
    if !(1..=4).contains(&i) {
        return Err(Error::SimpleIndex(i));
    }
    let a = Root::simple(i);
    let one = Q::one();
    Ok(unip(&a, &one).mul(&unip(&-a, &-one.clone())).mul(&unip(&a, &one)))
}

/// One term `x_{iα+jβ}(c·rⁱsʲ)` of a commutator expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub root: Root,
    pub coeff: i64,
    pub degree: (i32, i32),
}

/// The expansion of `x_β(s)⁻¹ x_α(r)⁻¹ x_β(s) x_α(r)` as an ordered product
/// `∏ x_{iα+jβ}(c_{ij} rⁱ sʲ)`, ordered by `i+j` then `i`.
pub fn commutator_formula(a: &Root, b: &Root) -> Result<Vec<CommutatorTerm>> {
    let terms = commutator_at(a, b, &Q::one(), &Q::one())?;
    Ok(terms
        .into_iter()
        .map(|(root, degree, c)| {
            assert!(c.is_integer(), "non-integral commutator coefficient");
            CommutatorTerm { root, coeff: c.to_integer().to_i64().expect("small coefficient"), degree }
        })
        .collect())
}

/// The commutator coefficients at given parameters `r`, `s`, collected from
/// the matrix commutator.
pub fn commutator_at(a: &Root, b: &Root, r: &Q, s: &Q) -> Result<Vec<(Root, (i32, i32), Q)>> {
    if *a == *b || *a == -*b {
        return Err(Error::OppositeRoots(a.to_string()));
    }
    let mut support: Vec<(Root, (i32, i32))> = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            if let Some(c) = a.combine(i, b, j) {
                support.push((c, (i, j)));
            }
        }
    }
    support.sort_by_key(|&(_, (i, j))| (i + j, i));
    let xa = unip(a, r);
    let xb = unip(b, s);
    let xa_inv = unip(a, &-r.clone());
    let xb_inv = unip(b, &-s.clone());
    let mut g = xb_inv.mul(&xa_inv).mul(&xb).mul(&xa);
    let mut out = Vec::new();
    let mut k = 0;
    while k < support.len() {
        let d = support[k].1 .0 + support[k].1 .1;
        let level: Vec<(Root, (i32, i32))> =
            support[k..].iter().take_while(|(_, (i, j))| i + j == d).copied().collect();
        k += level.len();
        let coeffs: Vec<Q> = level.iter().map(|(c, _)| read_coefficient(&g, c)).collect();
        for ((c, deg), t) in level.iter().zip(coeffs) {
            if !t.is_zero() {
                g = unip(c, &-t.clone()).mul(&g);
                out.push((*c, *deg, t));
            }
        }
    }
    if !g.is_identity() {
        return Err(Error::NotUnipotent(format!("commutator of {a} and {b} did not collect")));
    }
    Ok(out)
}

/// Reads `t` from the `e_γ` component of `g(h_k)`, which equals `−t⟨γ,α_k^∨⟩`
/// when `g` is a product of root elements whose lowest layer contains `γ`.
fn read_coefficient(g: &AdjointElement, c: &Root) -> Q {
    let k = (1..=4).find(|&k| copair(c, k) != 0).expect("some coroot pairs nontrivially");
    let comp = g.entry(c.index(), h_index(k));
    -comp / q(i64::from(copair(c, k)))
}

/// Writes an element of the positive unipotent group as `∏ x_α(t_α)` over the
/// positive roots in canonical order, returning the coefficients.
pub fn normal_form(g: &AdjointElement) -> Result<Vec<(Root, Q)>> {
    let pos = enumerate_positive_roots();
    let mut rest = g.clone();
    let mut out = Vec::with_capacity(pos.len());
    let max_h = pos.iter().map(Root::height).max().unwrap_or(0);
    for h in 1..=max_h {
        let level: Vec<Root> = pos.iter().copied().filter(|r| r.height() == h).collect();
        let coeffs: Vec<Q> = level.iter().map(|c| read_coefficient(&rest, c)).collect();
        for (c, t) in level.iter().zip(coeffs) {
            if !t.is_zero() {
                rest = unip(c, &-t.clone()).mul(&rest);
            }
            out.push((*c, t));
        }
    }
    if !rest.is_identity() {
        return Err(Error::NotUnipotent("residual after collection is not the identity".into()));
    }
    Ok(out)
}

/// The product `∏ x_α(t_α)` in the given order.
pub fn product(factors: &[(Root, Q)]) -> AdjointElement {
    factors.iter().fold(AdjointElement::identity(), |g, (a, t)| g.mul(&unip(a, t)))
}

/// Checks the Jacobi identity on every triple of basis elements; returns the
/// number of triples checked or the first failing triple.
pub fn check_jacobi() -> std::result::Result<usize, (usize, usize, usize)> {
    let mut count = 0;
    for x in 0..DIM {
        for y in x + 1..DIM {
            let xy = bracket_basis(x, y);
            for z in y + 1..DIM {
                let ex = LieVec::from([(x, 1)]);
                let ey = LieVec::from([(y, 1)]);
                let ez = LieVec::from([(z, 1)]);
                let mut total = bracket(&ex, &bracket(&ey, &ez));
                for (k, v) in bracket(&ey, &bracket(&ez, &ex)) {
                    *total.entry(k).or_insert(0) += v;
                }
                for (k, v) in bracket(&ez, &xy) {
                    *total.entry(k).or_insert(0) += v;
                }
                if total.values().any(|&v| v != 0) {
                    return Err((x, y, z));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Checks `|N_{α,β}| = p+1` for every pair with `α+β` a root; returns the
/// number of pairs checked or the first failing pair.
pub fn check_magnitudes() -> std::result::Result<usize, (Root, Root)> {
    let sc = structure_constants();
    let mut count = 0;
    for a in all_roots() {
        for b in all_roots() {
            if a.add(b).is_some() {
                let n = sc.get(a, b);
                if n.abs() != string_down(a, b) + 1 || sc.get(b, a) != -n {
                    return Err((*a, *b));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Absolute value of a rational coefficient as an integer, if integral.
pub fn abs_int(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Root {
        s.parse().unwrap()
    }

    #[test]
    fn structure_constants_are_consistent() {
        let pairs = all_roots().iter().flat_map(|a| all_roots().iter().filter(move |b| a.add(b).is_some())).count();
        assert_eq!(check_magnitudes().unwrap(), pairs);
        assert_eq!(check_jacobi().unwrap(), 52 * 51 * 50 / 6);
        assert_eq!(structure_constants().extraspecial_pairs().len(), 20);
    }

    #[test]
    fn extraspecial_signs_positive() {
        let sc = structure_constants();
        for (a, b) in sc.extraspecial_pairs() {
            assert!(sc.get(a, b) > 0);
        }
    }

    #[test]
    fn unip_basics() {
        let a = r("0121");
        assert!(unip(&a, &Q::zero()).is_identity());
        let s = q(3);
        let t = Q::new(BigInt::from(-5), BigInt::from(2));
        assert_eq!(unip(&a, &s).mul(&unip(&a, &t)), unip(&a, &(s + t)));
        for a in all_roots() {
            assert!(nilpotency_index(a) <= 5);
            assert!(!unip(a, &Q::one()).is_identity());
        }
    }

    #[test]
    fn torus_conjugation() {
        let t = [q(2), q(-3), Q::new(BigInt::from(1), BigInt::from(5)), q(7)];
        let h = torus(&t).unwrap();
        let hinv = h.inverse().unwrap();
        for a in ["0001", "-1220", "2342"] {
            let a = r(a);
            let lhs = h.mul(&unip(&a, &q(1))).mul(&hinv);
            assert_eq!(lhs, unip(&a, &torus_character(&a, &t)));
        }
        assert!(torus(&[q(1), q(0), q(1), q(1)]).is_err());
        assert!(torus(&[q(1), q(1), q(1), q(1)]).unwrap().is_identity());
    }

    #[test]
    fn weyl_rep_permutes_root_spaces() {
        let w3 = weyl_rep(3).unwrap();
        let col = w3.column(r("0100").index());
        assert_eq!(col.len(), 1);
        assert_eq!(col[0].0, r("0120").index());
        let w4 = weyl_rep(4).unwrap();
        let col = w4.column(r("0100").index());
        assert_eq!(col.len(), 1);
        assert_eq!(col[0].0, r("0100").index());
        let sq = w3.mul(&w3);
        for k in 0..DIM {
            for l in 0..DIM {
                let v = sq.entry(k, l);
                if k == l {
                    assert!(v.abs() == Q::one());
                } else {
                    assert!(v.is_zero());
                }
            }
        }
        assert!(sq.mul(&sq).is_identity());
    }

    #[test]
    fn commutator_examples() {
        let t = commutator_formula(&r("0100"), &r("0010")).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].root, t[0].degree, t[0].coeff.abs()), (r("0110"), (1, 1), 1));
        assert_eq!((t[1].root, t[1].degree, t[1].coeff.abs()), (r("0120"), (1, 2), 1));
        let t = commutator_formula(&r("1110"), &r("0010")).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].root, t[0].coeff.abs()), (r("1120"), 2));
        let t = commutator_formula(&r("-1100"), &r("1221")).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].root, t[0].degree, t[0].coeff.abs()), (r("0121"), (1, 1), 1));
        assert_eq!((t[1].root, t[1].degree, t[1].coeff.abs()), (r("1342"), (1, 2), 1));
        assert!(commutator_formula(&r("0100"), &r("-0100")).is_err());
        assert!(commutator_formula(&r("1000"), &r("0001")).unwrap().is_empty());
    }

    #[test]
    fn commutator_scales_as_monomials() {
        let (a, b) = (r("0100"), r("0010"));
        let base = commutator_formula(&a, &b).unwrap();
        let (rr, ss) = (q(2), q(3));
        let scaled = commutator_at(&a, &b, &rr, &ss).unwrap();
        for (t, (root, deg, c)) in base.iter().zip(scaled) {
            assert_eq!(t.root, root);
            let expect = q(t.coeff) * q(2i64.pow(deg.0 as u32)) * q(3i64.pow(deg.1 as u32));
            assert_eq!(c, expect);
        }
    }

    #[test]
    fn commutator_matches_structure_constant() {
        let sc = structure_constants();
        for a in enumerate_positive_roots() {
            for b in enumerate_positive_roots() {
                if let Some(c) = a.add(b) {
                    let t = commutator_formula(a, b).unwrap();
                    let first = t.iter().find(|x| x.degree == (1, 1)).unwrap();
                    assert_eq!(first.root, c);
                    assert_eq!(first.coeff.abs(), i64::from(sc.get(a, b).abs()));
                }
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let zero = normal_form(&AdjointElement::identity()).unwrap();
        assert!(zero.iter().all(|(_, t)| t.is_zero()));
        let a = r("0111");
        let g = unip(&a, &q(3)).mul(&unip(&a, &q(-3)));
        assert!(normal_form(&g).unwrap().iter().all(|(_, t)| t.is_zero()));
        let bad = weyl_rep(1).unwrap();
        assert!(normal_form(&bad).is_err());
    }
}
