use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use f4core::acceptance;
use f4core::chevalley::{commutator_formula, structure_constants};
use f4core::descent::{descent_table, identities, intro_cases, pair_feasibility, verify_named, Pair};
use f4core::exchange::{fixture, parse_script, replay, Script, FIXTURES};
use f4core::linalg::Q;
use f4core::orbits::{catalog, grading, orbit_of_diagram, orbits_with_half_dim, Diagram, OrbitLabel};
use f4core::rootsys::{all_roots, enumerate_positive_roots, weyl_element, weyl_enumerate, CocharWeight, Root, WeylWord};
use f4core::stabilizers::{
    f4a2_stab_basis, f4a3_discriminant, f4a3_family, f4a3_reduced_system, f4a3_stab, F4a2Char, Mat3J,
};
use f4core::tori::{
    compose, match_to_orbit, sp_partition_torus, sub_torus, torus_closed_form, torus_linear_solve, torus_of_orbit,
};

#[derive(Parser)]
#[command(name = "f4", version, about = "Exact root, orbit and torus computations in F4")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots of F4.
    Roots {
        #[arg(long)]
        positive: bool,
        /// Print only the number of roots.
        #[arg(long)]
        count: bool,
    },
    /// Weyl group summary, or the element given by a word.
    Weyl {
        word: Option<String>,
        /// Apply the element to this root.
        #[arg(long, allow_hyphen_values = true)]
        apply: Option<String>,
    },
    /// Commutator expansion of x_a(r) and x_b(s), or the structure-constant table.
    #[command(allow_negative_numbers = true)]
    Commutator {
        a: Option<String>,
        b: Option<String>,
        /// Dump N(a,b) for every pair with a+b a root.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        table: bool,
    },
    /// Nilpotent orbits with diagrams and dimensions.
    Orbits {
        #[arg(long)]
        half_dim: Option<usize>,
    },
    /// Roots of the grading attached to an orbit.
    Grade {
        #[command(flatten)]
        orbit: OrbitArg,
        #[arg(long)]
        level: Option<u32>,
    },
    /// The torus attached to an orbit.
    Torus {
        #[command(flatten)]
        orbit: OrbitArg,
    },
    /// Conjugate a cocharacter to an orbit torus.
    MatchTorus {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Compose an orbit torus with a sub-torus and conjugate the result to an orbit torus.
    Compose {
        #[command(flatten)]
        orbit: OrbitArg,
        /// Sub-torus weight r1,r2,r3,r4.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "tag", conflicts_with = "tag")]
        sub: Option<String>,
        /// Tag of a catalogued stabilizer sub-torus, e.g. "(2)".
        #[arg(long)]
        tag: Option<String>,
    },
    /// Torus of a partition in Sp(2n).
    SpTorus {
        size: usize,
        #[arg(value_delimiter = ',')]
        partition: Vec<u32>,
    },
    /// Stabilizer of a character: dimension and a basis.
    Stab {
        #[command(subcommand)]
        which: StabCmd,
    },
    /// Discriminant of the three-parameter F4(a3) family.
    #[command(allow_negative_numbers = true)]
    Discriminant { m: String, n: String, z: String },
    /// Dimension-equation data for descent.
    Descent {
        #[command(subcommand)]
        what: DescentCmd,
    },
    /// Feasibility of the dual pairs (same as `descent pairs`).
    Pairs { pair: Option<String> },
    /// Verify a composition identity by name, or all of them.
    Verify {
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Root exchange scripts.
    Exchange {
        #[command(subcommand)]
        what: ExchangeCmd,
    },
    /// Run the acceptance checks.
    Selftest,
}

/// An orbit given positionally or with `--orbit`; labels, ASCII aliases and
/// weighted diagrams are accepted.
#[derive(clap::Args)]
struct OrbitArg {
    #[arg(required_unless_present = "orbit_flag", conflicts_with = "orbit_flag")]
    orbit: Option<String>,
    #[arg(long = "orbit", id = "orbit_flag")]
    orbit_flag: Option<String>,
}

impl OrbitArg {
    fn label(&self) -> Result<OrbitLabel, Failure> {
        parse_orbit(self.orbit.as_deref().or(self.orbit_flag.as_deref()).expect("clap requires one"))
    }
}

#[derive(Subcommand)]
enum StabCmd {
    /// F4(a3): the pair (A, B) of J-symmetric matrices, each as r1..r6.
    #[command(allow_negative_numbers = true)]
    F4a3 {
        #[arg(short = 'A', long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'B', long = "B", allow_hyphen_values = true)]
        b: String,
    },
    /// F4(a2): the character a1..a6, g1, g2.
    #[command(allow_negative_numbers = true)]
    F4a2 {
        #[arg(long = "char", allow_hyphen_values = true)]
        chi: String,
    },
}

#[derive(Subcommand)]
enum DescentCmd {
    /// One row per orbit and attached stabilizer orbit.
    Table,
    /// Feasibility of the dual pairs.
    Pairs { pair: Option<String> },
    /// Balanced dimension equations for the classical cases.
    Cases,
}

#[derive(Subcommand)]
enum ExchangeCmd {
    /// Replay a script file or a built-in fixture.
    Replay { script: String },
    /// Names of the built-in fixtures.
    List,
}

/// A result table; every command renders through this.
struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(headers: &[&'static str]) -> Table {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> =
                        self.headers.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }

    fn render(&self, format: Format, command: &str, status: u8) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        match format {
            Format::Json => envelope(command, status, self.json_rows(), None),
            Format::Tsv => {
                let mut out = self.headers.join("\t");
                for r in &self.rows {
                    out.push('\n');
                    out.push_str(&r.iter().map(cell).collect::<Vec<_>>().join("\t"));
                }
                out
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|j| {
                        cells.iter().map(|r| r[j].chars().count()).chain([self.headers[j].len()]).max().unwrap_or(0)
                    })
                    .collect();
                let line = |r: &[String]| {
                    let padded: Vec<String> =
                        r.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                    padded.join("  ").trim_end().to_string()
                };
                let head: Vec<String> = self.headers.iter().map(|h| h.to_string()).collect();
                std::iter::once(line(&head)).chain(cells.iter().map(|r| line(r))).collect::<Vec<_>>().join("\n")
            }
        }
    }
}

const SCHEMA: u32 = 1;

fn envelope(command: &str, status: u8, payload: Value, error: Option<&str>) -> String {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("status".into(), json!(status));
    m.insert("payload".into(), payload);
    if let Some(e) = error {
        m.insert("error".into(), json!(e));
    }
    serde_json::to_string_pretty(&Value::Object(m)).expect("values serialize")
}

/// A failed run: exit code 1 for a check that did not hold, 2 for bad input.
enum Failure {
    Check(Table),
    Input(String),
}

type Outcome = Result<Table, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn parse_root(s: &str) -> Result<Root, Failure> {
    s.parse().map_err(input)
}

fn parse_orbit(s: &str) -> Result<OrbitLabel, Failure> {
    if let Ok(l) = s.parse::<OrbitLabel>() {
        return Ok(l);
    }
    // A weighted diagram such as 2202 is accepted in place of a label.
    match s.parse::<Diagram>() {
        Ok(d) => orbit_of_diagram(&d).ok_or_else(|| Failure::Input(format!("no orbit has diagram {d}"))),
        Err(_) => Err(Failure::Input(format!("unknown orbit label {s:?}"))),
    }
}

fn parse_q(s: &str) -> Result<Q, Failure> {
    s.trim().parse::<Q>().map_err(|_| Failure::Input(format!("not a rational number: {s:?}")))
}

fn parse_qs(s: &str) -> Result<Vec<Q>, Failure> {
    s.split([',', ' ']).filter(|x| !x.is_empty()).map(parse_q).collect()
}

fn parse_mat3j(s: &str) -> Result<Mat3J, Failure> {
    let r: [Q; 6] = parse_qs(s)?.try_into().map_err(|_| Failure::Input(format!("expected 6 rationals in {s:?}")))?;
    Ok(Mat3J::from_params(&r))
}

fn join_q<'a>(v: impl IntoIterator<Item = &'a Q>) -> Value {
    json!(v.into_iter().map(Q::to_string).collect::<Vec<_>>().join(","))
}

fn roots_list(v: &[Root]) -> Value {
    json!(v.iter().map(Root::to_string).collect::<Vec<_>>().join(" "))
}

fn labels(v: &[OrbitLabel]) -> Value {
    json!(v.iter().map(|l| l.ascii()).collect::<Vec<_>>().join(" "))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Roots { positive, count } => {
            let roots: &[Root] = if positive { enumerate_positive_roots() } else { all_roots() };
            if count {
                let mut t = Table::new(&["count"]);
                t.push(vec![json!(roots.len())]);
                return Ok(t);
            }
            let mut t = Table::new(&["index", "root", "height", "long"]);
            for r in roots {
                t.push(vec![json!(r.index()), json!(r.to_string()), json!(r.height()), json!(r.is_long())]);
            }
            Ok(t)
        }
        Command::Weyl { word, apply } => {
            let Some(word) = word else {
                let all = weyl_enumerate();
                let longest = all.iter().map(|w| w.length()).max().unwrap_or(0);
                let mut t = Table::new(&["order", "longest"]);
                t.push(vec![json!(all.len()), json!(longest)]);
                return Ok(t);
            };
            let w: WeylWord = word.parse().map_err(input)?;
            let el = weyl_element(&w);
            let reduced = weyl_enumerate().iter().find(|x| x.same_element(&el)).expect("every word is enumerated");
            let targets: Vec<Root> = match apply {
                Some(r) => vec![parse_root(&r)?],
                None => (1..=4).map(Root::simple).collect(),
            };
            let mut t = Table::new(&["word", "reduced", "length", "root", "image"]);
            for r in targets {
                t.push(vec![
                    json!(w.to_string()),
                    json!(reduced.word().to_string()),
                    json!(el.length()),
                    json!(r.to_string()),
                    json!(el.apply(&r).to_string()),
                ]);
            }
            Ok(t)
        }
        Command::Commutator { table: true, .. } => {
            let mut t = Table::new(&["a", "b", "sum", "n"]);
            for (a, b, c, n) in structure_constants().entries() {
                t.push(vec![json!(a.to_string()), json!(b.to_string()), json!(c.to_string()), json!(n)]);
            }
            Ok(t)
        }
        Command::Commutator { a, b, .. } => {
            let (Some(a), Some(b)) = (a, b) else {
                return Err(Failure::Input("give two roots or --table".into()));
            };
            let (a, b) = (parse_root(&a)?, parse_root(&b)?);
            let mut t = Table::new(&["root", "i", "j", "coeff"]);
            for term in commutator_formula(&a, &b).map_err(input)? {
                t.push(vec![json!(term.root.to_string()), json!(term.degree.0), json!(term.degree.1), json!(term.coeff)]);
            }
            Ok(t)
        }
        Command::Orbits { half_dim } => {
            let records = match half_dim {
                Some(k) => orbits_with_half_dim(k),
                None => catalog(),
            };
            let mut t = Table::new(&["orbit", "diagram", "dim", "half_dim", "stabilizer", "levels"]);
            for r in records {
                let levels: Vec<String> = grading(&r.diagram).levels().map(|(n, rs)| format!("{n}:{}", rs.len())).collect();
                t.push(vec![
                    json!(r.label.ascii()),
                    json!(r.diagram.to_string()),
                    json!(r.dim),
                    json!(r.half_dim),
                    json!(r.stabilizer),
                    json!(levels.join(" ")),
                ]);
            }
            Ok(t)
        }
        Command::Grade { orbit, level } => {
            let l = orbit.label()?;
            let g = grading(&l.diagram());
            let mut t = Table::new(&["level", "count", "roots"]);
            for (n, rs) in g.levels() {
                if level.is_none_or(|k| k == n) {
                    t.push(vec![json!(n), json!(rs.len()), roots_list(rs)]);
                }
            }
            Ok(t)
        }
        Command::Torus { orbit } => {
            let l = orbit.label()?;
            let d = l.diagram();
            let closed = torus_closed_form(&d).map_err(input)?;
            let solved = torus_linear_solve(&d).map_err(input)?;
            let mut t = Table::new(&["label", "diagram", "weight", "solve_agrees"]);
            t.push(vec![json!(l.ascii()), json!(d.to_string()), json!(closed.to_string()), json!(closed == solved)]);
            if closed == solved {
                Ok(t)
            } else {
                Err(Failure::Check(t))
            }
        }
        Command::MatchTorus { weight } => {
            let w: CocharWeight = weight.parse().map_err(input)?;
            let mut t = Table::new(&["weight", "label", "witness_word"]);
            match match_to_orbit(&w) {
                Some((l, word)) => {
                    t.push(vec![json!(w.to_string()), json!(l.ascii()), json!(word.to_string())]);
                    Ok(t)
                }
                None => {
                    t.push(vec![json!(w.to_string()), Value::Null, Value::Null]);
                    Err(Failure::Check(t))
                }
            }
        }
        Command::Compose { orbit, sub, tag } => {
            let host = orbit.label()?;
            let (sub_weight, violations) = match (&sub, &tag) {
                (Some(w), _) => (w.parse::<CocharWeight>().map_err(input)?, None),
                (None, Some(tag)) => {
                    let e = sub_torus(host, tag).map_err(input)?;
                    (e.weight, Some(e.stabilizer_violations()))
                }
                (None, None) => unreachable!("clap requires --sub or --tag"),
            };
            let composite = compose(&torus_of_orbit(&host.diagram()).map_err(input)?, &sub_weight);
            let matched = match_to_orbit(&composite);
            let mut t = Table::new(&["host", "sub", "weight", "label", "witness_word", "fixes_character"]);
            t.push(vec![
                json!(host.ascii()),
                json!(sub_weight.to_string()),
                json!(composite.to_string()),
                matched.as_ref().map_or(Value::Null, |(o, _)| json!(o.ascii())),
                matched.as_ref().map_or(Value::Null, |(_, w)| json!(w.to_string())),
                violations.as_ref().map_or(Value::Null, |v| json!(v.is_empty())),
            ]);
            if matched.is_some() && violations.is_none_or(|v| v.is_empty()) {
                Ok(t)
            } else {
                Err(Failure::Check(t))
            }
        }
        Command::SpTorus { size, partition } => {
            let p = sp_partition_torus(size, &partition).map_err(input)?;
            let mut t = Table::new(&["size", "partition", "exponents"]);
            let fmt = |v: Vec<String>| v.join(",");
            t.push(vec![
                json!(p.size),
                json!(fmt(p.partition.iter().map(u32::to_string).collect())),
                json!(fmt(p.exponents.iter().map(i64::to_string).collect())),
            ]);
            Ok(t)
        }
        Command::Stab { which: StabCmd::F4a3 { a, b } } => {
            let (a, b) = (parse_mat3j(&a)?, parse_mat3j(&b)?);
            let stab = f4a3_stab(&a, &b);
            let mut t = Table::new(&["dim", "index", "g1", "h1"]);
            for (k, s) in stab.basis.iter().enumerate() {
                t.push(vec![json!(stab.dim), json!(k + 1), join_q(s.g1.iter().flatten()), join_q(s.h1.iter().flatten())]);
            }
            Ok(t)
        }
        Command::Stab { which: StabCmd::F4a2 { chi } } => {
            let chi = F4a2Char::from_coords(&parse_qs(&chi)?).map_err(input)?;
            let basis = f4a2_stab_basis(&chi);
            let mut t = Table::new(&["dim", "index", "coefficients"]);
            if basis.is_empty() {
                t.push(vec![json!(0), Value::Null, Value::Null]);
            }
            for (k, c) in basis.iter().enumerate() {
                t.push(vec![json!(basis.len()), json!(k + 1), join_q(c)]);
            }
            Ok(t)
        }
        Command::Discriminant { m, n, z } => {
            let (m, n, z) = (parse_q(&m)?, parse_q(&n)?, parse_q(&z)?);
            let f = f4a3_discriminant(&m, &n, &z);
            let det = f4a3_reduced_system(&m, &n, &z).det();
            let (a, b) = f4a3_family(&m, &n, &z);
            let mut t = Table::new(&["m", "n", "z", "discriminant", "reduced_det", "stab_dim"]);
            t.push(vec![
                json!(m.to_string()),
                json!(n.to_string()),
                json!(z.to_string()),
                json!(f.to_string()),
                json!(det.to_string()),
                json!(f4a3_stab(&a, &b).dim),
            ]);
            Ok(t)
        }
        Command::Descent { what } => descent(what),
        Command::Pairs { pair } => descent(DescentCmd::Pairs { pair }),
        Command::Verify { name, all } => {
            let names: Vec<String> = match (name, all) {
                (Some(n), false) => vec![n],
                (None, true) => identities().iter().map(|i| i.name.to_string()).collect(),
                _ => return Err(Failure::Input("give an identity name or --all".into())),
            };
            let mut t = Table::new(&["name", "identity", "composite", "matched", "witness", "bookkeeping", "pass"]);
            let mut ok = true;
            for n in names {
                let r = verify_named(&n).map_err(input)?;
                ok &= r.pass;
                t.push(vec![
                    json!(r.name),
                    json!(r.identity),
                    json!(r.composite.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
                    r.matched.map_or(Value::Null, Value::from),
                    r.witness.map_or(Value::Null, Value::from),
                    json!(r.bookkeeping.holds()),
                    json!(r.pass),
                ]);
            }
            if ok {
                Ok(t)
            } else {
                Err(Failure::Check(t))
            }
        }
        Command::Exchange { what } => exchange(what),
        Command::Selftest => {
            let mut t = Table::new(&["criterion", "name", "verdict", "seconds", "detail"]);
            let mut ok = true;
            for v in acceptance::run_all() {
                ok &= v.passed;
                t.push(vec![
                    json!(v.id),
                    json!(v.name),
                    json!(if v.passed { "PASS" } else { "FAIL" }),
                    json!(format!("{:.2}", v.elapsed.as_secs_f64())),
                    json!(v.detail),
                ]);
            }
            if ok {
                Ok(t)
            } else {
                Err(Failure::Check(t))
            }
        }
    }
}

fn descent(what: DescentCmd) -> Outcome {
    match what {
        DescentCmd::Table => {
            let mut t = Table::new(&["orbit", "stabilizer", "half_dim", "attached", "sigma", "e", "targets", "note"]);
            for r in descent_table() {
                t.push(vec![
                    json!(r.orbit.ascii()),
                    json!(r.stabilizer),
                    json!(r.half_dim),
                    json!(r.attached),
                    json!(r.sigma),
                    json!(r.e),
                    labels(&r.targets),
                    r.note.map_or(Value::Null, Value::from),
                ]);
            }
            Ok(t)
        }
        DescentCmd::Pairs { pair } => {
            let pairs: Vec<Pair> = match pair {
                Some(p) => vec![p.parse().map_err(input)?],
                None => Pair::ALL.to_vec(),
            };
            let mut t = Table::new(&["pair", "direction", "pi", "sigma", "e", "orbits"]);
            for p in pairs {
                let report = pair_feasibility(p);
                for o in &report.options {
                    t.push(vec![
                        json!(p.to_string()),
                        json!(o.direction.to_string()),
                        json!(o.pi),
                        json!(o.sigma),
                        json!(o.e),
                        labels(&o.orbits),
                    ]);
                }
                if !report.reverse_analysed {
                    t.push(vec![json!(p.to_string()), json!("reverse"), Value::Null, Value::Null, Value::Null, Value::Null]);
                }
            }
            Ok(t)
        }
        DescentCmd::Cases => {
            let mut t = Table::new(&["name", "pi", "theta", "h", "v", "sigma", "balanced"]);
            let mut ok = true;
            for c in intro_cases() {
                let balanced = c.pi + c.theta == c.h + c.v + c.sigma;
                ok &= balanced;
                t.push(vec![
                    json!(c.name),
                    json!(c.pi),
                    json!(c.theta),
                    json!(c.h),
                    json!(c.v),
                    json!(c.sigma),
                    json!(balanced),
                ]);
            }
            if ok {
                Ok(t)
            } else {
                Err(Failure::Check(t))
            }
        }
    }
}

fn load_script(s: &str) -> Result<Script, Failure> {
    if FIXTURES.iter().any(|(n, _)| *n == s) {
        return fixture(s).map_err(input);
    }
    let text = fs::read_to_string(s).map_err(|e| Failure::Input(format!("{s}: {e}")))?;
    parse_script(s, &text).map_err(input)
}

fn exchange(what: ExchangeCmd) -> Outcome {
    match what {
        ExchangeCmd::List => {
            let mut t = Table::new(&["fixture", "steps"]);
            for (name, _) in FIXTURES {
                let s = fixture(name).map_err(input)?;
                t.push(vec![json!(name), json!(s.steps.len())]);
            }
            Ok(t)
        }
        ExchangeCmd::Replay { script } => {
            let s = load_script(&script)?;
            let out = replay(&s.datum, &s.steps);
            let mut t = Table::new(&["step", "action", "verdict", "detail"]);
            for (k, o) in out.steps.iter().enumerate() {
                let detail = match (&o.error, &o.report) {
                    (Some(e), _) => e.clone(),
                    (None, Some(r)) => r.coefficient.map_or(String::new(), |c| format!("|c| = {c}")),
                    (None, None) => String::new(),
                };
                t.push(vec![
                    json!(k + 1),
                    json!(o.step.to_string()),
                    json!(if o.passed() { "ok" } else { "rejected" }),
                    json!(detail),
                ]);
            }
            if out.completed() {
                Ok(t)
            } else {
                Err(Failure::Check(t))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let (status, out) = match run(cli.command) {
        Ok(t) => (0, t.render(cli.format, &command, 0)),
        Err(Failure::Check(t)) => (1, t.render(cli.format, &command, 1)),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            if !matches!(cli.format, Format::Json) {
                return ExitCode::from(2);
            }
            (2, envelope(&command, 2, Value::Array(Vec::new()), Some(&msg)))
        }
    };
    // A closed pipe (e.g. `| head`) is not an error for a batch query.
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    ExitCode::from(status)
}
