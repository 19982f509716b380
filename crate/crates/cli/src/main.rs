use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use fq_totient::collision::same_phi;
use fq_totient::density::{density_report, CSV_HEADER};
use fq_totient::erdos::{erdos_witness, intersection_member, intersection_up_to};
use fq_totient::gfpoly::pi_q;
use fq_totient::preimage::{count_profile, preimage_count, preimage_list, sierpinski_witness, SierpinskiGoal};
use fq_totient::totient::{phi, sigma, sigma_exponents, signature};
use fq_totient::verify::{run_suite, tally, Budget, Suite};
use fq_totient::{Error, FieldSpec, Poly};

#[derive(Parser)]
#[command(name = "fq-totient", version, about = "Totient and divisor-sum computations over F_q[x]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Field characteristic.
    #[arg(long)]
    p: u32,
    /// Extension degree; the field has p^s elements.
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Φ(f) with its factored form.
    Phi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
    /// σ(f) with its exponents over q^d - 1.
    Sigma {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
    /// Monic factorization.
    Factor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
    /// Degree and counts of distinct irreducible factors per degree.
    Signature {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
    /// Whether two polynomials have the same Φ, decided from signatures.
    SamePhi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Number of monic irreducibles of degree d.
    Pi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        d: u32,
    },
    /// Preimages of n under Φ.
    Preimage {
        #[command(subcommand)]
        action: PreimageAction,
    },
    /// An n with a prescribed number of preimages.
    Sierpinski {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        goal: GoalKind,
        #[arg(long)]
        l: u32,
    },
    /// Common values of Φ and σ.
    Erdos {
        #[command(subcommand)]
        action: ErdosAction,
    },
    /// Number of totient values up to y and its upper bound.
    Density {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        y: BigUint,
        /// Report every power q^k <= y instead of y alone.
        #[arg(long)]
        powers: bool,
    },
    /// Run a self-check suite.
    Verify {
        /// collisions, preimage, sierpinski, erdos, density, lemmas or all.
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        budget_degree: Option<usize>,
        #[arg(long)]
        budget_n: Option<u64>,
        #[arg(long)]
        budget_y: Option<u64>,
    },
}

#[derive(Subcommand)]
enum PreimageAction {
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: BigUint,
    },
    List {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: BigUint,
    },
    Profile {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: BigUint,
    },
}

#[derive(Subcommand)]
enum ErdosAction {
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: BigUint,
    },
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        y: BigUint,
    },
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: BigUint,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GoalKind {
    /// q = 2: exactly l preimages.
    Count,
    /// q != 2: exactly q^l preimages.
    QPower,
    /// q != 2: exactly binom(q, 2)(l + 1) preimages.
    Binom,
}

/// Result of a command: what to print and whether it counts as success.
struct Outcome {
    body: Body,
    ok: bool,
}

enum Body {
    Record(Map<String, Value>),
    Table { columns: Vec<&'static str>, rows: Vec<Vec<Value>> },
}

impl Outcome {
    fn record(value: Value) -> Self {
        Self::record_with(value, true)
    }

    fn record_with(value: Value, ok: bool) -> Self {
        match value {
            Value::Object(map) => Self { body: Body::Record(map), ok },
            other => panic!("record must be an object, got {other}"),
        }
    }
}

fn big_str(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

fn keyed<K: ToString, V: Into<Value> + Clone>(map: &BTreeMap<K, V>) -> Value {
    Value::Object(map.iter().map(|(k, v)| (k.to_string(), v.clone().into())).collect())
}

fn open(common: &Common) -> Result<FieldSpec, Error> {
    FieldSpec::new(common.p, common.s)
}

fn parse_poly(text: &str, field: &FieldSpec) -> Result<Poly, Error> {
    Poly::parse(text, field)
}

fn run(command: Command) -> Result<(Outcome, Format), Error> {
    Ok(match command {
        Command::Phi { common, poly } => {
            let f = open(&common)?;
            let (value, n) = phi(&parse_poly(&poly, &f)?, &f)?;
            let out = json!({
                "value": big_str(&n),
                "factored": { "j": value.j, "m": keyed(&value.counts) },
            });
            (Outcome::record(out), common.format)
        }
        Command::Sigma { common, poly } => {
            let f = open(&common)?;
            let g = parse_poly(&poly, &f)?;
            let n = sigma(&g, &f)?;
            let k = sigma_exponents(&g, &f)?;
            let ok = k.evaluate(f.q()) == n && k.validate(&f).is_ok();
            let out = json!({ "value": big_str(&n), "exponents": keyed(k.exps()) });
            (Outcome::record_with(out, ok), common.format)
        }
        Command::Factor { common, poly } => {
            let f = open(&common)?;
            let fac = f.factor(&parse_poly(&poly, &f)?)?;
            let factors: Vec<Value> = fac
                .parts
                .iter()
                .map(|(p, e)| json!({ "poly": p.to_string(), "exp": e }))
                .collect();
            (Outcome::record(json!({ "unit": fac.unit, "factors": factors })), common.format)
        }
        Command::Signature { common, poly } => {
            let f = open(&common)?;
            let sig = signature(&parse_poly(&poly, &f)?, &f)?;
            let out = json!({ "degree": sig.degree(), "m": keyed(sig.counts()) });
            (Outcome::record(out), common.format)
        }
        Command::SamePhi { common, f: a, g: b } => {
            let f = open(&common)?;
            let sa = signature(&parse_poly(&a, &f)?, &f)?;
            let sb = signature(&parse_poly(&b, &f)?, &f)?;
            (Outcome::record(json!({ "same": same_phi(&sa, &sb, &f) })), common.format)
        }
        Command::Pi { common, d } => {
            let f = open(&common)?;
            let out = json!({ "d": d, "value": big_str(&pi_q(&f, d)?) });
            (Outcome::record(out), common.format)
        }
        Command::Preimage { action } => match action {
            PreimageAction::Count { common, n } => {
                let f = open(&common)?;
                require_positive(&n)?;
                (Outcome::record(json!({ "count": big_str(&preimage_count(&n, &f)) })), common.format)
            }
            PreimageAction::List { common, n } => {
                let f = open(&common)?;
                require_positive(&n)?;
                let list = preimage_list(&n, &f)?;
                let ok = BigUint::from(list.len()) == preimage_count(&n, &f);
                let polys: Vec<String> = list.iter().map(ToString::to_string).collect();
                (Outcome::record_with(json!({ "n": big_str(&n), "preimages": polys }), ok), common.format)
            }
            PreimageAction::Profile { common, n } => {
                let f = open(&common)?;
                require_positive(&n)?;
                let profile = count_profile(&n, &f)?;
                let out = json!({
                    "n": big_str(&profile.n),
                    "count": big_str(&profile.count),
                    "class": profile.class.as_str(),
                });
                (Outcome::record(out), common.format)
            }
        },
        Command::Sierpinski { common, goal, l } => {
            let f = open(&common)?;
            let goal = match goal {
                GoalKind::Count => SierpinskiGoal::Count(l),
                GoalKind::QPower => SierpinskiGoal::QPower(l),
                GoalKind::Binom => SierpinskiGoal::BinomMultiple(l),
            };
            let (n, expected) = sierpinski_witness(&f, goal)?;
            let count = preimage_count(&n, &f);
            let ok = count == expected;
            let out = json!({
                "n": big_str(&n),
                "expected": big_str(&expected),
                "count": big_str(&count),
            });
            (Outcome::record_with(out, ok), common.format)
        }
        Command::Erdos { action } => match action {
            ErdosAction::Member { common, n } => {
                let f = open(&common)?;
                require_positive(&n)?;
                let v = intersection_member(&n, &f);
                let mut out = json!({ "member": v.member });
                if let Some(family) = v.family {
                    out["family"] = json!(family.tag());
                    out["params"] = json!(v.params);
                }
                (Outcome::record_with(out, v.member), common.format)
            }
            ErdosAction::Scan { common, y } => {
                let f = open(&common)?;
                require_positive(&y)?;
                let values: Vec<Value> = intersection_up_to(&y, &f).iter().map(big_str).collect();
                (Outcome::record(json!({ "y": big_str(&y), "values": values })), common.format)
            }
            ErdosAction::Witness { common, n } => {
                let f = open(&common)?;
                require_positive(&n)?;
                match erdos_witness(&n, &f)? {
                    Some((pf, g)) => (
                        Outcome::record(json!({ "n": big_str(&n), "f": pf.to_string(), "g": g.to_string() })),
                        common.format,
                    ),
                    None => (Outcome::record_with(json!({ "n": big_str(&n), "f": null, "g": null }), false), common.format),
                }
            }
        },
        Command::Density { common, y, powers } => {
            let f = open(&common)?;
            require_positive(&y)?;
            let mut points = Vec::new();
            if powers {
                let q = BigUint::from(f.q());
                let mut t = q.clone();
                while t <= y {
                    points.push(t.clone());
                    t *= &q;
                }
            } else {
                points.push(y);
            }
            let mut rows = Vec::new();
            for point in &points {
                let r = density_report(point, &f)?;
                let mut row = vec![big_str(&r.y), json!(r.k), big_str(&r.v), json!(r.bound), json!(r.ratio)];
                if common.format != Format::Csv {
                    row.push(json!(r.bound_checked));
                }
                rows.push(row);
            }
            let mut columns: Vec<&str> = CSV_HEADER.split(',').collect();
            if common.format != Format::Csv {
                // k = 0 gives a zero bound, so the check is skipped and flagged here.
                columns.push("bound_checked");
            }
            (Outcome { body: Body::Table { columns, rows }, ok: true }, common.format)
        }
        Command::Verify { suite, format, budget_degree, budget_n, budget_y } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            let budget = Budget { degree: budget_degree, n: budget_n, y: budget_y };
            let mut rows = Vec::new();
            let (mut passed, mut failed) = (0, 0);
            for s in suites {
                let checks = run_suite(s, &budget)?;
                let (p, f) = tally(&checks);
                passed += p;
                failed += f;
                for c in checks {
                    rows.push(vec![json!(s.name()), json!(c.name), json!(c.passed), json!(c.detail)]);
                }
            }
            let ok = failed == 0;
            if format != Format::Json {
                let columns = vec!["suite", "check", "passed", "detail"];
                (Outcome { body: Body::Table { columns, rows }, ok }, format)
            } else {
                let checks: Vec<Value> = rows
                    .into_iter()
                    .map(|r| json!({ "suite": r[0], "check": r[1], "passed": r[2], "detail": r[3] }))
                    .collect();
                let out = json!({ "passed": passed, "failed": failed, "checks": checks });
                (Outcome::record_with(out, ok), format)
            }
        }
    })
}

fn require_positive(n: &BigUint) -> Result<(), Error> {
    if *n == BigUint::from(0u32) {
        return Err(Error::InvalidArgument("expected a positive integer".into()));
    }
    Ok(())
}

/// Nested objects become dotted keys; scalar arrays become one `;`-joined cell.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), item, out);
            }
        }
        Value::Array(items) => {
            out.push((prefix.to_string(), items.iter().map(scalar_text).collect::<Vec<_>>().join(";")));
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(v: &Value) -> String {
    csv_escape(scalar_text(v))
}

fn csv_escape(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn render(body: &Body, format: Format) -> String {
    match (body, format) {
        (Body::Record(map), Format::Json) => Value::Object(map.clone()).to_string(),
        (Body::Record(map), Format::Text) => {
            let mut cells = Vec::new();
            flatten("", &Value::Object(map.clone()), &mut cells);
            cells.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n")
        }
        (Body::Record(map), Format::Csv) => {
            let mut cells = Vec::new();
            flatten("", &Value::Object(map.clone()), &mut cells);
            let (header, row): (Vec<String>, Vec<String>) =
                cells.into_iter().map(|(k, v)| (csv_escape(k), csv_escape(v))).unzip();
            format!("{}\n{}", header.join(","), row.join(","))
        }
        (Body::Table { columns, rows }, Format::Json) => {
            let objects: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
                .collect();
            json!({ "rows": objects }).to_string()
        }
        (Body::Table { columns, rows }, Format::Csv) => {
            let mut lines = vec![columns.join(",")];
            lines.extend(rows.iter().map(|r| r.iter().map(csv_field).collect::<Vec<_>>().join(",")));
            lines.join("\n")
        }
        (Body::Table { columns, rows }, Format::Text) => rows
            .iter()
            .map(|r| {
                columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| format!("{c}={}", scalar_text(v)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvariantViolation(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((outcome, format)) => {
            println!("{}", render(&outcome.body, format));
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let kind = match &err {
                Error::ConstantPolynomial | Error::ZeroPolynomial => "constant-polynomial",
                Error::Parse(_) => "parse",
                Error::NotPrime(_) | Error::FieldTooLarge(_) => "field",
                Error::InvariantViolation(_) => "check-failed",
                _ => "invalid-argument",
            };
            eprintln!("{}", json!({ "error": err.to_string(), "kind": kind }));
            ExitCode::from(exit_code_for(&err))
        }
    }
}
