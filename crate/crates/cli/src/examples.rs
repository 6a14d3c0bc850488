//! Registry of worked examples, each a command line with the expected part
//! of its JSON output.

use clap::Parser;
use serde_json::{json, Value};

use crate::{run, Cli, CliError, ExampleAction};

pub struct ExampleRecord {
    pub id: &'static str,
    pub title: &'static str,
    pub args: &'static [&'static str],
    /// JSON that must be contained in the output.
    pub expect: &'static str,
}

const LI_WANG_GRID: &str = "*\n+ *\n+ + *\n* * * *\n+ * + * *\n+ - * * - *\n+ - + * + - *";

pub const REGISTRY: &[ExampleRecord] = &[
    ExampleRecord {
        id: "descartes-alternating",
        title: "Sign changes of an alternating sequence",
        args: &["descartes", "+ - + - +"],
        expect: r#"{"value": 4}"#,
    },
    ExampleRecord {
        id: "cyclotomic-sign-mult",
        title: "Sign multiplicity of x - 1 in x^4 - x^3 + x^2 - x + 1",
        args: &["mult", "--field", "S", "-f", "x^4-x^3+x^2-x+1", "-l", "x-1"],
        expect: r#"{"value": 4}"#,
    },
    ExampleRecord {
        id: "krasner-dense-cubic",
        title: "Krasner multiplicity of a dense cubic",
        args: &["mult", "--field", "K", "-f", "1 + x + x^2 + x^3", "-l", "1 + x"],
        expect: r#"{"value": 3}"#,
    },
    ExampleRecord {
        id: "boundary-cubic",
        title: "Boundary multiplicity exceeding the multiplicity",
        args: &["bmult", "-f", "+|- +|+ + -|+ + - +", "-l", "1 + x + y"],
        expect: r#"{"value": 1}"#,
    },
    ExampleRecord {
        id: "sign-larger-mult",
        title: "Sign cubic with a linear factor over S",
        args: &["mult", "-f", "+|- +|+ - -|+ - + +", "-l", "1 + x + y"],
        expect: r#"{"value": 1}"#,
    },
    ExampleRecord {
        id: "sign-larger-quotient",
        title: "The unique sign quotient of the same cubic",
        args: &["divides", "-f", "+|- +|+ - -|+ - + +", "-l", "1 + x + y"],
        expect: r#"{"count": 1}"#,
    },
    ExampleRecord {
        id: "sign-larger-real",
        title: "No real quotient by a positive line",
        args: &["real-quotient", "-f", "+|- +|+ - -|+ - + +", "--signs", "+,+"],
        expect: r#"{"outcome": "INFEASIBLE"}"#,
    },
    ExampleRecord {
        id: "relative-cubic-mult",
        title: "Sign multiplicity of a dense cubic with a real factor",
        args: &["mult", "-f", "-|- +|+ - -|+ + + -", "-l", "1 + x + y"],
        expect: r#"{"value": 1}"#,
    },
    ExampleRecord {
        id: "relative-cubic-certificate",
        title: "Real factorization with the signs of the dense cubic",
        args: &[
            "verify-cert",
            "-f",
            "-|- +|+ - -|+ + + -",
            "--factor",
            "1 + x + y",
            "--factor",
            "1 + 1/2*x - 3/10*y",
            "--factor",
            "1 - 33/100*x + 1/100*y",
        ],
        expect: r#"{"verified": true}"#,
    },
    ExampleRecord {
        id: "relative-cubic-pmult",
        title: "A factoring perturbation of the dense cubic",
        args: &["pmult", "-f", "-|- +|+ - -|+ + + -", "-l", "1 + x + y"],
        expect: r#"{"value": 1}"#,
    },
    ExampleRecord {
        id: "three-variable-quadric",
        title: "Quadric in three variables with a sign factor",
        args: &["mult", "-f", "1+x+y-z-xy-xz+yz-x^2+y^2-z^2", "-l", "1 + x + y + z"],
        expect: r#"{"value": 1}"#,
    },
    ExampleRecord {
        id: "three-variable-real",
        title: "No real quotient of the quadric",
        args: &["real-quotient", "-f", "1+x+y-z-xy-xz+yz-x^2+y^2-z^2", "--signs", "+,+,+"],
        expect: r#"{"outcome": "INFEASIBLE"}"#,
    },
    ExampleRecord {
        id: "tropical-line-summand",
        title: "A line summand that is not a factor",
        args: &["gmult", "--field", "T", "-f", "0 + x + y + 1x^3 + 1x^2y + 2y^3", "-l", "0 + x + y"],
        expect: r#"{"value": 1}"#,
    },
    ExampleRecord {
        id: "tropical-line-mult",
        title: "Multiplicity of the same line over T",
        args: &["mult", "--field", "T", "-f", "0 + x + y + 1x^3 + 1x^2y + 2y^3", "-l", "0 + x + y"],
        expect: r#"{"value": 0}"#,
    },
    ExampleRecord {
        id: "signed-line-summand",
        title: "Signs block a tropical line summand",
        args: &["gmult", "--field", "TR", "-f", "0 - x + y", "-l", "0 + x + y", "--enriched"],
        expect: r#"{"value": 0}"#,
    },
    ExampleRecord {
        id: "initial-conic",
        title: "Initial form of a tropical conic at the origin",
        args: &["initial", "--field", "T", "-f", "0 + x + y + 2x^2 + 1xy + 2y^2", "-w", "0,0"],
        expect: r#"{"initial": "1 + x + y"}"#,
    },
    ExampleRecord {
        id: "single-subdivision-pmult",
        title: "Perturbation multiplicity of a non-dense quadric",
        args: &["pmult", "-f", "1 - x^2 + xy - y^2", "-l", "1 + x - y", "--relaxed"],
        expect: r#"{"value": 0}"#,
    },
    ExampleRecord {
        id: "liwang-resultant",
        title: "Sign grid of the resultant of a fewnomial system",
        args: &[
            "resultant",
            "--poly",
            "1 + ax - by",
            "--poly",
            "1 + rx^3 - sy^3 - tx^3y^3",
            "--out",
            "signgrid",
            "--signs",
            "a=+,b=+,r=+,s=+,t=+",
        ],
        expect: "LI_WANG",
    },
    ExampleRecord {
        id: "liwang-bound",
        title: "Bounds on positive solutions of the fewnomial system",
        args: &["system-bound", "-f", "1 + x - y", "-f", "1 + x^3 - y^3 - x^3y^3", "--h", "+,+"],
        expect: r#"{"lower": 2, "upper": 3}"#,
    },
    ExampleRecord {
        id: "liwang-epsilon",
        title: "Transverse lifts of the fewnomial system",
        args: &["epsilon-n", "-f", "1 + x - y", "-f", "1 + x^3 - y^3 - x^3y^3", "--h", "+,+"],
        expect: r#"{"value": 2}"#,
    },
    ExampleRecord {
        id: "conic-line-resultant",
        title: "Sign grid of a line meeting a conic",
        args: &[
            "resultant",
            "--poly",
            "1 + ax + by",
            "--poly",
            "1 + tx + rx^2 - sy^2",
            "--out",
            "signgrid",
            "--signs",
            "a=+,b=+,r=+,s=+,t=+",
        ],
        expect: r#"{"grid": "*\n* *\n* * *", "bound": 2}"#,
    },
    ExampleRecord {
        id: "conic-line-bound",
        title: "A resultant bound that is not attained",
        args: &["system-bound", "-f", "1 + x + y", "-f", "1 + x + x^2 - y^2", "--h", "+,+"],
        expect: r#"{"upper": 2, "exact": 0}"#,
    },
    ExampleRecord {
        id: "circle-resultant",
        title: "Resultant of a circle and a tangent line",
        args: &["resultant", "--poly", "3x + 4y - 5", "--poly", "x^2 + y^2 - 1"],
        expect: r#"{"degree": 2}"#,
    },
    ExampleRecord {
        id: "two-lines-transverse",
        title: "Two tropical lines meet once",
        args: &["transverse", "--field", "T", "-f", "0 + x + y", "-f", "0 + t^(-3)x + 2y"],
        expect: r#"{"points": [{"location": ["3", "0"], "m_k": 1}]}"#,
    },
];

fn expected(r: &ExampleRecord) -> Value {
    if r.expect == "LI_WANG" {
        return json!({"grid": LI_WANG_GRID, "bound": 3, "matrix_size": 22});
    }
    serde_json::from_str(r.expect).expect("registry JSON")
}

/// `want` is contained in `got`: objects by key, everything else by value.
fn contains(got: &Value, want: &Value) -> bool {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => {
            w.iter().all(|(k, v)| g.get(k).is_some_and(|x| contains(x, v)))
        }
        (Value::Array(g), Value::Array(w)) => {
            g.len() == w.len() && g.iter().zip(w).all(|(x, y)| contains(x, y))
        }
        _ => got == want,
    }
}

fn run_one(r: &ExampleRecord) -> Value {
    let argv = std::iter::once("hypermult").chain(r.args.iter().copied());
    let want = expected(r);
    let got = match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) => Err(CliError::Parse(e.to_string())),
    };
    let mut out = json!({"id": r.id});
    let pass = match got {
        Ok(v) => {
            let pass = contains(&v, &want);
            if let Value::Object(m) = v {
                for (k, x) in m {
                    out[k] = x;
                }
            }
            pass
        }
        Err(e) => {
            out["error"] = e.to_json();
            false
        }
    };
    out["pass"] = json!(pass);
    if !pass {
        out["expected"] = want;
    }
    out
}

pub fn run_examples(action: &ExampleAction) -> Result<Value, CliError> {
    match action {
        ExampleAction::List => Ok(json!({
            "examples": REGISTRY
                .iter()
                .map(|r| format!("{:<28} {}", r.id, r.title))
                .collect::<Vec<_>>(),
        })),
        ExampleAction::Run { id, all } => {
            let chosen: Vec<&ExampleRecord> = match (id, all) {
                (_, true) => REGISTRY.iter().collect(),
                (Some(id), false) => {
                    let r = REGISTRY
                        .iter()
                        .find(|r| r.id == id)
                        .ok_or_else(|| CliError::Parse(format!("no example named {id:?}")))?;
                    vec![r]
                }
                (None, false) => return Err(CliError::Parse("give an example id or --all".into())),
            };
            let results: Vec<Value> = chosen.iter().map(|r| run_one(r)).collect();
            let failed = results.iter().filter(|v| v["pass"] != json!(true)).count();
            if let [single] = &results[..] {
                let mut v = single.clone();
                v["failed"] = json!(failed);
                return Ok(v);
            }
            let summary: Vec<String> = results
                .iter()
                .map(|v| {
                    let mark = if v["pass"] == json!(true) { "ok  " } else { "FAIL" };
                    format!("{mark} {}", v["id"].as_str().unwrap_or_default())
                })
                .collect();
            Ok(json!({"passed": results.len() - failed, "failed": failed, "results": summary}))
        }
    }
}

