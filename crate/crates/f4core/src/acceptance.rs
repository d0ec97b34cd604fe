//! End-to-end checks shared by the `acceptance` test target and the
//! `selftest` command. Each check returns a verdict with a one-line detail
//! and never panics on a failed expectation.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::chevalley::{check_jacobi, check_magnitudes, commutator_formula, torus, unip, DIM};
use crate::descent::{
    check_dim_equation, descent_table, identities, intro_cases, pair_feasibility, verify_composition, Ambient,
    Direction, Pair,
};
use crate::exchange::{fixture, replay, FIXTURES};
use crate::linalg::{q, Q};
use crate::orbits::{grading, orbits_with_half_dim, OrbitLabel};
use crate::rootsys::{all_roots, weyl_enumerate, CocharWeight, Root, WeylElement};
use crate::stabilizers::{
    f4a3_discriminant, f4a3_equations, f4a3_family, f4a3_stab, trivial_solution, Mat3J,
};
use crate::tori::{sp4_composite, sp6_composite, sp_partition_torus, torus_closed_form, torus_linear_solve};

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {} ({:.2}s) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub const NAMES: [&str; 10] = [
    "torus table",
    "dimension table",
    "gradings",
    "composition identities",
    "chevalley engine",
    "commutator fixtures",
    "stabilizers",
    "dimension equations",
    "symplectic cross-checks",
    "exchange fixtures",
];

const BUDGETS: [u64; 10] = [1, 1, 1, 5, 60, 1, 5, 1, 1, 1];

type Check = fn() -> std::result::Result<String, String>;

const CHECKS: [Check; 10] = [
    torus_table,
    dimension_table,
    gradings,
    composition_identities,
    chevalley_engine,
    commutator_fixtures,
    stabilizers,
    dimension_equations,
    symplectic,
    exchange_fixtures,
];

/// Runs criterion `id` (1-based). A check that overruns its budget is
/// still reported with its verdict; the timing is in `elapsed`.
pub fn run(id: u8) -> Option<Verdict> {
    let k = usize::from(id).checked_sub(1).filter(|k| *k < CHECKS.len())?;
    let start = Instant::now();
    let result = CHECKS[k]();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(Verdict { id, name: NAMES[k], passed, detail, elapsed, budget: Duration::from_secs(BUDGETS[k]) })
}

pub fn run_all() -> Vec<Verdict> {
    (1..=10).filter_map(run).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn roots(s: &str) -> Vec<Root> {
    let mut v: Vec<Root> = s.split_whitespace().map(|x| x.parse().expect("literal root")).collect();
    v.sort();
    v
}

pub const TORUS_TABLE: [(OrbitLabel, [i64; 4]); 15] = {
    use OrbitLabel::*;
    [
        (A1, [2, 3, 2, 1]),
        (A1t, [2, 4, 3, 2]),
        (A1A1t, [3, 6, 4, 2]),
        (A2, [4, 6, 4, 2]),
        (A2t, [4, 8, 6, 4]),
        (A2A1t, [4, 8, 6, 3]),
        (B2, [6, 10, 7, 4]),
        (A2tA1, [5, 10, 7, 4]),
        (C3a1, [6, 11, 8, 4]),
        (F4a3, [6, 12, 8, 4]),
        (B3, [10, 18, 12, 6]),
        (C3, [10, 19, 14, 8]),
        (F4a2, [10, 20, 14, 8]),
        (F4a1, [14, 26, 18, 10]),
        (F4, [22, 42, 30, 16]),
    ]
};

fn torus_table() -> std::result::Result<String, String> {
    for (l, want) in TORUS_TABLE {
        let d = l.diagram();
        let closed = torus_closed_form(&d).map_err(|e| e.to_string())?;
        let solved = torus_linear_solve(&d).map_err(|e| e.to_string())?;
        ensure(closed == CocharWeight(want), || format!("{l}: closed form {closed} != {:?}", want))?;
        ensure(solved == closed, || format!("{l}: linear solve {solved} != {closed}"))?;
    }
    Ok("15 tori, closed form = linear solve".into())
}

pub const HALF_DIMS: [(OrbitLabel, usize); 11] = {
    use OrbitLabel::*;
    [(C3, 21), (B3, 21), (C3a1, 19), (A2tA1, 18), (B2, 18), (A2A1t, 17), (A2t, 15), (A2, 15), (A1A1t, 14), (A1t, 11), (A1, 8)]
};

fn dimension_table() -> std::result::Result<String, String> {
    for (l, want) in HALF_DIMS {
        let got = l.record().half_dim;
        ensure(got == want, || format!("{l}: half dim {got} != {want}"))?;
    }
    // Independent count: dim O = dim g − dim g₀ − dim g₁ for the grading.
    for l in OrbitLabel::nonzero() {
        let g = grading(&l.diagram());
        let level0 = all_roots().iter().filter(|r| r.is_positive() && l.diagram().level(r) == 0).count();
        let centralizer = 4 + 2 * level0 + g.level(1).len();
        let half = l.record().half_dim;
        ensure(2 * half == DIM - centralizer, || format!("{l}: 2·{half} != {DIM} − {centralizer}"))?;
        ensure(half == g.at_least(2).len() + g.level(1).len() / 2, || format!("{l}: U(2) + U'(1)/2 mismatch"))?;
    }
    Ok("11 tabulated half-dims, 15 orbits satisfy both counts".into())
}

fn gradings() -> std::result::Result<String, String> {
    use OrbitLabel::*;
    let cases: [(OrbitLabel, u32, &str); 13] = [
        (B2, 1, "0001 0011 0111 0121"),
        (B2, 2, "1000 1100 1110 1120 1220 0122"),
        (B2, 3, "1111 1121 1221 1231"),
        (B2, 4, "1122 1222 1232 1242 1342"),
        (B2, 6, "2342"),
        (B3, 2, "0100 0110 0111 0120 0121 0122 1000"),
        (F4a1, 2, "0100 0110 0120 0001 0011 1000"),
        (A2tA1, 2, "0111 0121 1111 1121 1220"),
        (C3a1, 2, "0120 0121 0122 1110 1111"),
        (F4a2, 2, "0001 0011 0100 1100 0110 1110 0120 1120"),
        (A2A1t, 2, "0120 0121 0122 1120 1121 1122 1220 1221 1222"),
        (A1t, 2, "0122 1122 1222 1232 1242 1342 2342"),
        (A1A1t, 2, "1220 1221 1222 1231 1232 1242"),
    ];
    let mut n = 0;
    for (l, level, want) in cases {
        let got = grading(&l.diagram()).level(level).to_vec();
        ensure(got == roots(want), || format!("{l} level {level}: {got:?}"))?;
        n += 1;
    }
    ensure(grading(&B2.diagram()).level(5).is_empty(), || "B2 level 5 is not empty".into())?;
    let f4a3 = grading(&F4a3.diagram()).level(2).to_vec();
    let ok = f4a3.len() == 12 && f4a3.iter().all(|r| r.coeffs()[1] == 1 && r.coeffs()[0] <= 1);
    ensure(ok, || format!("F4(a3) level 2: {f4a3:?}"))?;
    let a2a1t = grading(&A2A1t.diagram()).at_least(2).len();
    ensure(a2a1t == 14, || format!("A2+A1t: dim U(2) = {a2a1t}"))?;
    let a1a1t = grading(&A1A1t.diagram()).level(1).to_vec();
    let want = roots("0100 1100 0110 1110 0111 0120 0121 1111 1120 0122 1121 1122");
    ensure(a1a1t == want, || format!("A1+A1t level 1: {a1a1t:?}"))?;
    Ok(format!("{} root lists equal", n + 3))
}

fn composition_identities() -> std::result::Result<String, String> {
    let mut names = Vec::new();
    for id in identities().iter().filter(|i| i.ambient == Ambient::F4) {
        let r = verify_composition(id).map_err(|e| e.to_string())?;
        ensure(r.pass && r.witness.is_some(), || {
            format!("{}: composite {:?} matched {:?}, expected {}", id.name, r.composite, r.matched, r.expected)
        })?;
        names.push(format!("{}→{}", id.lhs(), r.expected));
    }
    Ok(format!("{} identities with witnesses", names.len()))
}

fn chevalley_engine() -> std::result::Result<String, String> {
    let w: &[WeylElement] = weyl_enumerate();
    ensure(w.len() == 1152, || format!("Weyl group has {} elements", w.len()))?;
    let triples = check_jacobi().map_err(|t| format!("Jacobi fails on {t:?}"))?;
    let pairs = check_magnitudes().map_err(|(a, b)| format!("|N({a},{b})| != p+1"))?;
    // Conjugating x_α(r) by the orbit torus at t = 2 rescales it by 2^n.
    let mut checks = 0;
    let r = q(3);
    for l in OrbitLabel::nonzero() {
        let h = crate::tori::torus_of_orbit(&l.diagram()).map_err(|e| e.to_string())?;
        let t: [Q; 4] = h.0.map(pow2);
        let d = torus(&t).map_err(|e| e.to_string())?;
        for a in grading(&l.diagram()).roots() {
            let n = l.diagram().level(&a);
            let x = unip(&a, &r);
            let y = unip(&a, &(&r * pow2(i64::from(n))));
            let diag = |i: usize| d.entry(i, i).clone();
            for i in 0..DIM {
                for j in 0..DIM {
                    let lhs = x.entry(i, j) * diag(i) / diag(j);
                    if &lhs != y.entry(i, j) {
                        return Err(format!("{l}: conjugation of x_{a} fails at ({i},{j})"));
                    }
                }
            }
            checks += 1;
        }
    }
    Ok(format!("1152 elements, {pairs} pairs, {triples} Jacobi triples, {checks} torus conjugations"))
}

fn pow2(e: i64) -> Q {
    let two = q(2);
    let mut x = Q::from_integer(1.into());
    for _ in 0..e.abs() {
        x *= &two;
    }
    if e < 0 {
        x.recip()
    } else {
        x
    }
}

/// `(root, (i, j), |c|)` for one commutator term.
pub type TermMagnitude = (Root, (i32, i32), i64);

/// `(α, β, terms)` for known commutator relations.
pub fn commutator_fixture_data() -> Vec<(Root, Root, Vec<TermMagnitude>)> {
    let r = |s: &str| -> Root { s.parse().expect("literal root") };
    vec![
        (r("1110"), r("0010"), vec![(r("1120"), (1, 1), 2)]),
        (r("0110"), r("0010"), vec![(r("0120"), (1, 1), 2)]),
        (r("1100"), r("0010"), vec![(r("1110"), (1, 1), 1), (r("1120"), (1, 2), 1)]),
        (r("0100"), r("0010"), vec![(r("0110"), (1, 1), 1), (r("0120"), (1, 2), 1)]),
        (r("-1100"), r("1221"), vec![(r("0121"), (1, 1), 1), (r("1342"), (1, 2), 1)]),
    ]
}

fn commutator_fixtures() -> std::result::Result<String, String> {
    let data = commutator_fixture_data();
    for (a, b, want) in &data {
        let got: Vec<TermMagnitude> = commutator_formula(a, b)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|t| (t.root, t.degree, t.coeff.abs()))
            .collect();
        ensure(&got == want, || format!("[{a},{b}]: {got:?}"))?;
    }
    Ok(format!("{} relations up to sign", data.len()))
}

fn stabilizers() -> std::result::Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0xF4);
    for k in 0..100 {
        let mut params = || -> [Q; 6] { std::array::from_fn(|_| q(rng.random_range(-9..=9))) };
        let a = Mat3J::from_params(&params());
        let b = Mat3J::from_params(&params());
        let t = q(rng.random_range(1..=9));
        ensure(f4a3_equations(&a, &b, &trivial_solution(&t)).iter().all(Zero::is_zero), || {
            format!("sample {k}: trivial solution violates the system")
        })?;
        ensure(f4a3_stab(&a, &b).dim >= 1, || format!("sample {k}: empty stabilizer"))?;
    }
    let one = |m: [[i64; 3]; 3]| Mat3J::from_i64(m).expect("J-symmetric literal");
    let pairs = [
        (one([[0, 1, 0], [0, 0, 1], [3, 0, 0]]), one([[1, 0, 0], [1, 0, 0], [0, 1, 1]])),
        (one([[0, 0, 1], [0, 1, 0], [1, 0, 0]]), one([[0, 0, 0], [1, 0, 0], [0, 1, 0]])),
    ];
    for (a, b) in &pairs {
        let dim = f4a3_stab(a, b).dim;
        ensure(dim == 1, || format!("reference character has stabilizer dim {dim}"))?;
    }
    for m in -2..=2 {
        for n in -2..=2 {
            for z in -2..=2 {
                let (m, n, z) = (q(m), q(n), q(z));
                let f = f4a3_discriminant(&m, &n, &z);
                let (a, b) = f4a3_family(&m, &n, &z);
                let dim = f4a3_stab(&a, &b).dim;
                ensure(f.is_zero() == (dim > 1), || format!("grid point ({m},{n},{z}): f={f}, dim={dim}"))?;
            }
        }
    }
    let f = f4a3_discriminant(&q(1), &Q::zero(), &Q::zero());
    ensure(f == q(-27), || format!("f(1,0,0) = {f}"))?;
    Ok("100 random pairs, 2 reference characters, 125 grid points, f(1,0,0) = -27".into())
}

fn dimension_equations() -> std::result::Result<String, String> {
    for c in intro_cases() {
        ensure(check_dim_equation(&c), || format!("{} does not balance", c.name))?;
    }
    let fwd = |p: Pair| pair_feasibility(p).feasible(Direction::Forward).iter().map(|o| o.e).collect::<Vec<_>>();
    let rev = |p: Pair| pair_feasibility(p).feasible(Direction::Reverse).iter().map(|o| o.e).collect::<Vec<_>>();
    let infeasible_rev = |p: Pair| {
        pair_feasibility(p)
            .options
            .iter()
            .filter(|o| o.direction == Direction::Reverse && !o.feasible())
            .map(|o| o.e)
            .collect::<Vec<_>>()
    };
    ensure(fwd(Pair::Sl3Sl3) == [8], || "(SL3,SL3) forward".into())?;
    ensure(fwd(Pair::Sl2Sl2Sp4) == [8] && rev(Pair::Sl2Sl2Sp4) == [8, 8], || "(SL2xSL2,Sp4)".into())?;
    ensure(fwd(Pair::Sl2Sl4) == [8] && infeasible_rev(Pair::Sl2Sl4) == [10], || "(SL2,SL4)".into())?;
    ensure(fwd(Pair::So3G2) == [8] && rev(Pair::So3G2).is_empty(), || "(SO3,G2)".into())?;
    ensure(fwd(Pair::Sl2Sp6) == [8, 11] && rev(Pair::Sl2Sp6) == [15, 14], || "(SL2,Sp6) feasible".into())?;
    ensure(infeasible_rev(Pair::Sl2Sp6).contains(&13), || "(SL2,Sp6) dim E = 13 not flagged".into())?;

    use OrbitLabel::*;
    let want: [(OrbitLabel, u32, u32, bool); 14] = [
        (C3, 1, 22, true),
        (B3, 1, 22, true),
        (C3a1, 1, 20, true),
        (A2tA1, 1, 19, true),
        (B2, 2, 20, true),
        (A2A1t, 1, 18, true),
        (A2t, 6, 21, true),
        (A2t, 5, 20, true),
        (A2, 3, 18, true),
        (A1A1t, 2, 16, false),
        (A1t, 6, 17, true),
        (A1, 9, 17, true),
        (A1, 8, 16, false),
        (A1, 6, 14, true),
    ];
    let table = descent_table();
    let got: Vec<(OrbitLabel, u32, u32, bool)> = table.iter().map(|r| (r.orbit, r.sigma, r.e, r.feasible())).collect();
    ensure(got == want, || format!("descent table {got:?}"))?;
    for r in &table {
        ensure(r.feasible() != orbits_with_half_dim(r.e as usize).is_empty(), || format!("{} feasibility", r.orbit))?;
    }
    Ok(format!("{} intro cases, 5 pairs, {} descent rows", intro_cases().len(), table.len()))
}

fn symplectic() -> std::result::Result<String, String> {
    let expect: [(usize, &[u32], [i64; 4]); 3] =
        [(4, &[4], [3, 1, -1, -3]), (4, &[2, 2], [1, 1, -1, -1]), (4, &[2, 1, 1], [1, 0, 0, -1])];
    for (size, p, want) in expect {
        let t = sp_partition_torus(size, p).map_err(|e| e.to_string())?;
        ensure(t.exponents == want, || format!("{p:?}: {:?}", t.exponents))?;
    }
    let (c4, same) = sp4_composite();
    ensure(same, || format!("(21²)∘(2) composite {c4:?} is not h(2²)"))?;
    let (c6, witness) = sp6_composite();
    ensure(c6 == [3, 1, -1, 1, -1, -3], || format!("(2³)∘(3) composite {c6:?}"))?;
    ensure(witness.is_some(), || "no signed permutation maps the composite to h(42)".into())?;
    Ok("3 partition tori, Sp4 without conjugation, Sp6 with a signed permutation".into())
}

fn exchange_fixtures() -> std::result::Result<String, String> {
    let mut failures = Vec::new();
    let mut steps = 0;
    for (name, _) in FIXTURES {
        let s = fixture(name).map_err(|e| e.to_string())?;
        let out = replay(&s.datum, &s.steps);
        steps += out.steps.len();
        if let Some(k) = out.failed_at {
            let why = out.steps[k].error.clone().unwrap_or_default();
            failures.push(format!("{name} step {} ({}): {why}", k + 1, s.steps[k]));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} fixtures, {steps} steps", FIXTURES.len()))
    } else {
        Err(failures.join(" | "))
    }
}
