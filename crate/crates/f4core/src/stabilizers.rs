//! Infinitesimal stabilizers of Fourier-coefficient characters for the
//! orbits F4(a3) and F4(a2).
//!
//! For F4(a3) a character is a pair `(A, B)` of 3×3 matrices with
//! `J₃X = XᵗJ₃`, and the stabilizer algebra is the kernel of
//! `g₁A + AJ₃g₁ᵗJ₃ + a₁A + b₁B = 0`, `g₁B + BJ₃g₁ᵗJ₃ + c₁A + d₁B = 0`
//! in the 13 unknowns `(h₁, g₁)`. For F4(a2) a character is a constrained
//! 4×2 matrix with two scalars, acted on by two root `SL₂`'s and the torus.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};

pub type M3 = [[Q; 3]; 3];
pub type M2 = [[Q; 2]; 2];

fn zero3() -> M3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()))
}

fn mul3(a: &M3, b: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(Q::zero(), |s, k| s + &a[i][k] * &b[k][j])))
}

fn transpose3(a: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// `J₃XJ₃`: reverses rows and columns.
fn flip3(a: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[2 - i][2 - j].clone()))
}

fn add3(a: &M3, b: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + &b[i][j]))
}

fn scale3(c: &Q, a: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| c * &a[i][j]))
}

/// A 3×3 matrix with `J₃X = XᵗJ₃`, i.e. symmetric about the anti-diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3J {
    m: M3,
}

impl Mat3J {
    /// `[[r₄,r₅,r₆],[r₂,r₃,r₅],[r₁,r₂,r₄]]`.
    pub fn from_params(r: &[Q; 6]) -> Mat3J {
        let [r1, r2, r3, r4, r5, r6] = r.clone();
        Mat3J {
            m: [[r4.clone(), r5.clone(), r6], [r2.clone(), r3, r5], [r1, r2, r4]],
        }
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Mat3J> {
        Mat3J::try_from_matrix(std::array::from_fn(|i| std::array::from_fn(|j| q(rows[i][j]))))
    }

    pub fn try_from_matrix(m: M3) -> Result<Mat3J> {
        for i in 0..3 {
            for j in 0..3 {
                if m[i][j] != m[2 - j][2 - i] {
                    return Err(Error::InvalidDatum(format!("entry ({i},{j}) breaks J₃-symmetry")));
                }
            }
        }
        Ok(Mat3J { m })
    }

    pub fn zero() -> Mat3J {
        Mat3J { m: zero3() }
    }

    pub fn params(&self) -> [Q; 6] {
        let m = &self.m;
        [m[2][0].clone(), m[1][0].clone(), m[1][1].clone(), m[0][0].clone(), m[0][1].clone(), m[0][2].clone()]
    }

    pub fn matrix(&self) -> &M3 {
        &self.m
    }

    /// `gXJ₃gᵗJ₃`.
    pub fn conjugate(&self, g: &M3) -> Mat3J {
        let m = mul3(&mul3(g, &self.m), &flip3(&transpose3(g)));
        Mat3J::try_from_matrix(m).expect("the action preserves J₃-symmetry")
    }

    pub fn combine(a: &Q, x: &Mat3J, b: &Q, y: &Mat3J) -> Mat3J {
        Mat3J { m: add3(&scale3(a, &x.m), &scale3(b, &y.m)) }
    }
}

/// One element `(h₁, g₁)` of the stabilizer algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabSolution {
    pub h1: M2,
    pub g1: M3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabResult {
    pub dim: usize,
    pub basis: Vec<StabSolution>,
}

fn unknowns_to_solution(x: &[Q]) -> StabSolution {
    StabSolution {
        g1: std::array::from_fn(|i| std::array::from_fn(|j| x[3 * i + j].clone())),
        h1: [[x[9].clone(), x[10].clone()], [x[11].clone(), x[12].clone()]],
    }
}

/// Left-hand sides of both equations, flattened to 18 entries.
pub fn f4a3_equations(a: &Mat3J, b: &Mat3J, s: &StabSolution) -> Vec<Q> {
    let g = &s.g1;
    let tw = flip3(&transpose3(g));
    let [[a1, b1], [c1, d1]] = &s.h1;
    let e1 = add3(&add3(&mul3(g, &a.m), &mul3(&a.m, &tw)), &add3(&scale3(a1, &a.m), &scale3(b1, &b.m)));
    let e2 = add3(&add3(&mul3(g, &b.m), &mul3(&b.m, &tw)), &add3(&scale3(c1, &a.m), &scale3(d1, &b.m)));
    e1.iter().chain(e2.iter()).flat_map(|row| row.iter().cloned()).collect()
}

fn f4a3_system(a: &Mat3J, b: &Mat3J) -> QMatrix {
    let mut m = QMatrix::zeros(18, 13);
    for k in 0..13 {
        let mut x = vec![Q::zero(); 13];
        x[k] = Q::one();
        for (i, v) in f4a3_equations(a, b, &unknowns_to_solution(&x)).into_iter().enumerate() {
            m.set(i, k, v);
        }
    }
    m
}

/// Solution space of the stabilizer equations for the pair `(A, B)`.
pub fn f4a3_stab(a: &Mat3J, b: &Mat3J) -> StabResult {
    let basis: Vec<StabSolution> = f4a3_system(a, b).kernel().iter().map(|v| unknowns_to_solution(v)).collect();
    StabResult { dim: basis.len(), basis }
}

/// `(h₁, g₁) = (−2tI₂, tI₃)`.
pub fn trivial_solution(t: &Q) -> StabSolution {
    let mut g1 = zero3();
    for (i, row) in g1.iter_mut().enumerate() {
        row[i] = t.clone();
    }
    let m2 = -(q(2) * t);
    StabSolution { g1, h1: [[m2.clone(), Q::zero()], [Q::zero(), m2]] }
}

pub fn f4a3_discriminant(m: &Q, n: &Q, z: &Q) -> Q {
    let m2 = m * m;
    q(-27) * &m2 * &m2 + q(18) * n * &m2 * z + q(4) * &m2 * z * z * z + q(4) * n * n * n + n * n * z * z
}

/// Coefficients of the reduced system in `(c₁, c₂, c₄)`.
pub fn f4a3_reduced_system(m: &Q, n: &Q, z: &Q) -> QMatrix {
    let rows = vec![
        vec![-(q(2) * n + z * z), -(q(3) * m), -z.clone()],
        vec![-(m * z), -n.clone(), -(q(3) * m)],
        vec![q(3) * m * m - n * z, q(2) * m * z, -(q(2) * n)],
    ];
    QMatrix::from_rows(&rows)
}

/// The constant `κ` with `det(reduced system) = κ·f(m,n,z)`.
pub const REDUCED_DET_FACTOR: i64 = -1;

/// The character pair `A = [[0,m,n],[0,0,m],[1,0,0]]`, `B = [[1,0,z],[0,1,0],[0,0,1]]`.
pub fn f4a3_family(m: &Q, n: &Q, z: &Q) -> (Mat3J, Mat3J) {
    let zero = Q::zero;
    let one = Q::one;
    let a = [[zero(), m.clone(), n.clone()], [zero(), zero(), m.clone()], [one(), zero(), zero()]];
    let b = [[one(), zero(), z.clone()], [zero(), one(), zero()], [zero(), zero(), one()]];
    (
        Mat3J::try_from_matrix(a).expect("family is J₃-symmetric"),
        Mat3J::try_from_matrix(b).expect("family is J₃-symmetric"),
    )
}

/// A character `ψ_{A,γ₁,γ₂}` for F4(a2), with
/// `A = [[a₁,a₂],[a₃,a₄],[a₅,a₁],[a₆,−a₃]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F4a2Char {
    pub a: [Q; 6],
    pub gamma: [Q; 2],
}

pub type M42 = [[Q; 2]; 4];

impl F4a2Char {
    pub fn new(a: [Q; 6], gamma: [Q; 2]) -> F4a2Char {
        F4a2Char { a, gamma }
    }

    /// From the eight coordinates `a₁..a₆, γ₁, γ₂`.
    pub fn from_coords(c: &[Q]) -> Result<F4a2Char> {
        if c.len() != 8 {
            return Err(Error::InvalidDatum(format!("expected 8 coordinates, got {}", c.len())));
        }
        Ok(F4a2Char {
            a: std::array::from_fn(|i| c[i].clone()),
            gamma: [c[6].clone(), c[7].clone()],
        })
    }

    pub fn coords(&self) -> Vec<Q> {
        self.a.iter().chain(self.gamma.iter()).cloned().collect()
    }

    pub fn matrix(&self) -> M42 {
        let [a1, a2, a3, a4, a5, a6] = self.a.clone();
        [[a1.clone(), a2], [a3.clone(), a4], [a5, a1], [a6, -a3]]
    }

    /// Reads a 4×2 matrix back, checking the shape constraints.
    pub fn from_matrix(m: &M42, gamma: [Q; 2]) -> Result<F4a2Char> {
        if m[2][1] != m[0][0] || m[3][1] != -m[1][0].clone() {
            return Err(Error::InvalidDatum("matrix leaves the constrained 4×2 shape".into()));
        }
        Ok(F4a2Char {
            a: [m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone(), m[2][0].clone(), m[3][0].clone()],
            gamma,
        })
    }
}

/// The group elements acting on F4(a2) characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F4a2Element {
    /// `g` in the `SL₂` of `±(1000)`, acting by `diag(g, g⁻¹)`.
    Long(M2),
    /// `x_{0010}(m)`.
    X0010(Q),
    /// `x_{−0010}(m)`.
    XMinus0010(Q),
    /// `h(t₁,t₂,t₃,t₄)`.
    Torus([Q; 4]),
}

fn mul_4x4_42(m: &[[Q; 4]; 4], a: &M42) -> M42 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).fold(Q::zero(), |s, k| s + &m[i][k] * &a[k][j])))
}

fn mul_42_22(a: &M42, n: &M2) -> M42 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..2).fold(Q::zero(), |s, k| s + &a[i][k] * &n[k][j])))
}

fn mul_22_v(m: &M2, v: &[Q; 2]) -> [Q; 2] {
    std::array::from_fn(|i| &m[i][0] * &v[0] + &m[i][1] * &v[1])
}

/// Exponents of `(t₁..t₄)` in the diagonal entries of `T₁`, `T₂` and in the
/// scalings of `γ₁`, `γ₂`. `x_{0010}` mixes `γ` as it mixes the columns of
/// `A`, so `γ` scales like the columns: `γ₁` by `t₃t₄⁻²`, not its inverse.
const T1_EXP: [[i64; 4]; 4] = [[-1, 1, -1, 1], [1, 0, -1, 1], [-1, 0, 1, 0], [1, -1, 1, 0]];
const T2_EXP: [[i64; 4]; 2] = [[0, 0, 1, -2], [0, 1, -1, -1]];
const GAMMA_EXP: [[i64; 4]; 2] = [[0, 0, 1, -2], [0, 1, -1, -1]];

fn monomial(t: &[Q; 4], e: &[i64; 4]) -> Q {
    let mut x = Q::one();
    for (ti, &k) in t.iter().zip(e) {
        let base = if k < 0 { ti.recip() } else { ti.clone() };
        for _ in 0..k.abs() {
            x *= &base;
        }
    }
    x
}

pub fn f4a2_act(el: &F4a2Element, chi: &F4a2Char) -> Result<F4a2Char> {
    let a = chi.matrix();
    let z = Q::zero;
    let o = Q::one;
    match el {
        F4a2Element::Long(g) => {
            let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
            if det != Q::one() {
                return Err(Error::InvalidDatum("long-root element must have determinant 1".into()));
            }
            let gi = [[g[1][1].clone(), -g[0][1].clone()], [-g[1][0].clone(), g[0][0].clone()]];
            let m = [
                [g[0][0].clone(), g[0][1].clone(), z(), z()],
                [g[1][0].clone(), g[1][1].clone(), z(), z()],
                [z(), z(), gi[0][0].clone(), gi[0][1].clone()],
                [z(), z(), gi[1][0].clone(), gi[1][1].clone()],
            ];
            F4a2Char::from_matrix(&mul_4x4_42(&m, &a), chi.gamma.clone())
        }
        F4a2Element::X0010(s) => {
            let m = [
                [o(), z(), s.clone(), z()],
                [z(), o(), z(), -s.clone()],
                [z(), z(), o(), z()],
                [z(), z(), z(), o()],
            ];
            let n = [[o(), s.clone()], [z(), o()]];
            let gamma = mul_22_v(&[[o(), z()], [s.clone(), o()]], &chi.gamma);
            F4a2Char::from_matrix(&mul_42_22(&mul_4x4_42(&m, &a), &n), gamma)
        }
        F4a2Element::XMinus0010(s) => {
            let m = [
                [o(), z(), z(), z()],
                [z(), o(), z(), z()],
                [s.clone(), z(), o(), z()],
                [z(), -s.clone(), z(), o()],
            ];
            let n = [[o(), z()], [s.clone(), o()]];
            let gamma = mul_22_v(&[[o(), s.clone()], [z(), o()]], &chi.gamma);
            F4a2Char::from_matrix(&mul_42_22(&mul_4x4_42(&m, &a), &n), gamma)
        }
        F4a2Element::Torus(t) => {
            if let Some(i) = t.iter().position(Zero::is_zero) {
                return Err(Error::ZeroParameter(i + 1));
            }
            let b: M42 = std::array::from_fn(|i| {
                std::array::from_fn(|j| monomial(t, &T1_EXP[i]) * &a[i][j] * monomial(t, &T2_EXP[j]))
            });
            let gamma = std::array::from_fn(|k| monomial(t, &GAMMA_EXP[k]) * &chi.gamma[k]);
            F4a2Char::from_matrix(&b, gamma)
        }
    }
}

/// Dimension of the acting Lie algebra: two root `sl₂`'s and the center.
pub const F4A2_ALGEBRA_DIM: usize = 8;

/// Tangent vectors at `χ` of the eight one-parameter families spanning the
/// acting algebra: `t₁..t₄`, `x_{±1000}`, `x_{±0010}`.
pub fn f4a2_tangents(chi: &F4a2Char) -> Vec<Vec<Q>> {
    let a = chi.matrix();
    let mut out = Vec::new();
    for i in 0..4 {
        let b: M42 = std::array::from_fn(|r| std::array::from_fn(|c| q(T1_EXP[r][i] + T2_EXP[c][i]) * &a[r][c]));
        let mut v = F4a2Char::from_matrix(&b, [Q::zero(), Q::zero()]).expect("torus preserves the shape").coords();
        v[6] = q(GAMMA_EXP[0][i]) * &chi.gamma[0];
        v[7] = q(GAMMA_EXP[1][i]) * &chi.gamma[1];
        out.push(v);
    }
    let families: [fn(Q) -> F4a2Element; 4] = [
        |s| F4a2Element::Long([[Q::one(), s], [Q::zero(), Q::one()]]),
        |s| F4a2Element::Long([[Q::one(), Q::zero()], [s, Q::one()]]),
        F4a2Element::X0010,
        F4a2Element::XMinus0010,
    ];
    // Each family is polynomial of degree ≤ 2 in its parameter, so the
    // central difference is the exact derivative at 0.
    for fam in families {
        let plus = f4a2_act(&fam(Q::one()), chi).expect("unipotent action").coords();
        let minus = f4a2_act(&fam(-Q::one()), chi).expect("unipotent action").coords();
        out.push(plus.iter().zip(&minus).map(|(p, m)| (p - m) / q(2)).collect());
    }
    out
}

/// `8 − rank` of the tangent map at `χ`.
pub fn f4a2_stab_dim(chi: &F4a2Char) -> usize {
    let rows = f4a2_tangents(chi);
    F4A2_ALGEBRA_DIM - QMatrix::from_rows(&rows).rank()
}

/// Coefficients `c` (in the order of [`f4a2_tangents`]) with `Σ cₖ Xₖ·χ = 0`.
pub fn f4a2_stab_basis(chi: &F4a2Char) -> Vec<Vec<Q>> {
    let rows = f4a2_tangents(chi);
    let n = rows.first().map_or(0, Vec::len);
    let cols: Vec<Vec<Q>> = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    QMatrix::from_rows(&cols).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    fn qs<const N: usize>(v: [i64; N]) -> [Q; N] {
        v.map(q)
    }

    #[test]
    fn f4a2_basis_matches_dim() {
        let chi = F4a2Char::new(qs([1, 0, 0, 1, 0, 0]), qs([0, 0]));
        let basis = f4a2_stab_basis(&chi);
        assert_eq!(basis.len(), f4a2_stab_dim(&chi));
        let rows = f4a2_tangents(&chi);
        for c in &basis {
            for j in 0..rows[0].len() {
                assert!(rows.iter().zip(c).fold(Q::zero(), |s, (r, ck)| s + &r[j] * ck).is_zero());
            }
        }
    }

    #[test]
    fn mat3j_round_trip() {
        let r = qs([1, 2, 3, 4, 5, 6]);
        let x = Mat3J::from_params(&r);
        assert_eq!(x.params(), r);
        assert_eq!(Mat3J::try_from_matrix(x.matrix().clone()).unwrap(), x);
        assert!(Mat3J::from_i64([[1, 0, 0], [0, 0, 0], [0, 0, 0]]).is_err());
    }

    #[test]
    fn reference_characters_have_trivial_stabilizer() {
        let z = Mat3J::zero();
        assert_eq!(f4a3_stab(&z, &z).dim, 13);
        let a = Mat3J::from_i64([[0, 1, 0], [0, 0, 1], [1, 0, 0]]).unwrap();
        let b = Mat3J::from_i64([[1, 0, 0], [1, 0, 0], [0, 1, 1]]).unwrap();
        assert_eq!(f4a3_stab(&a, &b).dim, 1);
        let a = Mat3J::from_i64([[0, 0, 1], [0, 1, 0], [1, 0, 0]]).unwrap();
        let b = Mat3J::from_i64([[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap();
        let res = f4a3_stab(&a, &b);
        assert_eq!(res.dim, 1);
        for s in &res.basis {
            assert!(f4a3_equations(&a, &b, s).iter().all(Zero::is_zero));
        }
        assert!(f4a3_equations(&a, &b, &trivial_solution(&q(1))).iter().all(Zero::is_zero));
    }

    #[test]
    fn discriminant_values() {
        let zero = Q::zero();
        assert_eq!(f4a3_discriminant(&q(1), &zero, &zero), q(-27));
        assert_eq!(f4a3_discriminant(&zero, &zero, &q(5)), zero);
        let det = f4a3_reduced_system(&q(1), &zero, &zero).det();
        assert_eq!(det, q(27));
        assert!(f4a3_reduced_system(&zero, &zero, &q(1)).rank() <= 2);
    }

    #[test]
    fn discriminant_grid() {
        for m in -2..=2 {
            for n in -2..=2 {
                for z in -2..=2 {
                    let (m, n, z) = (q(m), q(n), q(z));
                    let f = f4a3_discriminant(&m, &n, &z);
                    let red = f4a3_reduced_system(&m, &n, &z);
                    assert_eq!(red.det(), q(REDUCED_DET_FACTOR) * &f);
                    let (a, b) = f4a3_family(&m, &n, &z);
                    let dim = f4a3_stab(&a, &b).dim;
                    assert_eq!(f.is_zero(), dim > 1, "m={m} n={n} z={z} dim={dim}");
                    if !f.is_zero() {
                        assert_eq!(red.rank(), 3);
                    }
                }
            }
        }
    }

    #[test]
    fn f4a2_torus_normalizes_root_groups() {
        // h x(s) h⁻¹ = x(c(h) s) on characters, with c(h) = t₂t₃⁻²t₄ for ±0010.
        let chi = F4a2Char::new(qs([-2, 0, 2, -1, -2, -4]), qs([4, -4]));
        let t = qs([3, 2, 5, 7]);
        let ti = [qf(1, 3), qf(1, 2), qf(1, 5), qf(1, 7)];
        let c = qf(2 * 7, 25);
        let s = q(3);
        let conj = |x: F4a2Element| {
            let inner = f4a2_act(&F4a2Element::Torus(ti.clone()), &chi).unwrap();
            f4a2_act(&F4a2Element::Torus(t.clone()), &f4a2_act(&x, &inner).unwrap()).unwrap()
        };
        assert_eq!(conj(F4a2Element::X0010(s.clone())), f4a2_act(&F4a2Element::X0010(&c * &s), &chi).unwrap());
        assert_eq!(
            conj(F4a2Element::XMinus0010(s.clone())),
            f4a2_act(&F4a2Element::XMinus0010(s.clone() / &c), &chi).unwrap()
        );
    }

    #[test]
    fn f4a2_actions() {
        let chi = F4a2Char::new(qs([1, 2, 3, 4, 5, 6]), qs([7, 8]));
        let id = F4a2Element::Torus(qs([1, 1, 1, 1]));
        assert_eq!(f4a2_act(&id, &chi).unwrap(), chi);
        let t = f4a2_act(&F4a2Element::Torus(qs([1, 1, 1, 2])), &chi).unwrap();
        assert_eq!(t.gamma[0], qf(7, 4));
        assert!(f4a2_act(&F4a2Element::Torus(qs([1, 0, 1, 1])), &chi).is_err());
        let u = f4a2_act(&F4a2Element::X0010(qf(1, 3)), &chi).unwrap();
        let back = f4a2_act(&F4a2Element::X0010(qf(-1, 3)), &u).unwrap();
        assert_eq!(back, chi);
        let g = F4a2Element::Long([[q(1), q(2)], [q(0), q(1)]]);
        assert!(f4a2_act(&g, &chi).is_ok());
    }

    #[test]
    fn f4a2_stabilizer_dims() {
        let zero = F4a2Char::new(qs([0; 6]), qs([0, 0]));
        assert_eq!(f4a2_stab_dim(&zero), F4A2_ALGEBRA_DIM);
        let chi = F4a2Char::new(qs([1, 1, 0, 1, 1, 0]), qs([1, 0]));
        assert_eq!(f4a2_stab_dim(&chi), 0);
    }
}
