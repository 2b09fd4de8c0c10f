use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use pmgraph::genus2::{self, Genus2Type};
use pmgraph::hyperelliptic::{check_identities, NodeTypeCounts};
use pmgraph::invariants::{self, ExactValue};
use pmgraph::oracle::{self, Quantity};
use pmgraph::rational::{self, Rational};
use pmgraph::recovery::fit_phi;
use pmgraph::{Error, GraphPoint, PolarizedMetricGraph, Potential};

use crate::{Command, Failure, Inputs};

pub enum Output {
    Json(Value),
    /// Plain text and whether its check held.
    Text(String, bool),
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn load_graph(inputs: &mut Inputs, path: &PathBuf) -> Result<PolarizedMetricGraph, Failure> {
    Ok(PolarizedMetricGraph::from_json(&inputs.read(path)?)?)
}

fn point(s: &str) -> Result<GraphPoint, Failure> {
    Ok(s.parse::<GraphPoint>()?)
}

fn exact(r: Rational) -> Value {
    to_value(&ExactValue::new(r))
}

fn checked(payload: Value, ok: bool) -> Result<Output, Failure> {
    if ok {
        Ok(Output::Json(payload))
    } else {
        Err(Failure::Check(payload))
    }
}

pub fn run(cmd: &Command, seed: u64, inputs: &mut Inputs) -> Result<Output, Failure> {
    match cmd {
        Command::Invariants { graph } => {
            let g = load_graph(inputs, graph)?;
            Ok(Output::Json(to_value(&invariants::report(&g)?)))
        }

        Command::Green { graph, at } => {
            let g = load_graph(inputs, graph)?;
            if at.len() != 2 {
                return Err(Error::ArityMismatch {
                    tag: "--at".into(),
                    expected: 2,
                    got: at.len(),
                }
                .into());
            }
            let (x, y) = (point(&at[0])?, point(&at[1])?);
            let pot = Potential::new(&g)?;
            let v = pot.green(&x, &y)?;
            Ok(Output::Json(json!({
                "x": x.to_string(),
                "y": y.to_string(),
                "green": exact(v),
            })))
        }

        Command::Potential { graph, at } => {
            let g = load_graph(inputs, graph)?;
            let pot = Potential::new(&g)?;
            let mut points = Vec::new();
            let defaults: Vec<String> = g.vertices().iter().map(|v| format!("vertex:{}", v.id)).collect();
            for s in if at.is_empty() { &defaults } else { at } {
                let p = point(s)?;
                points.push(json!({
                    "point": p.to_string(),
                    "f": exact(pot.potential_f(&p)?),
                    "f_minus_c": exact(pot.green(&p, &p)?),
                }));
            }
            let profiles: Vec<Value> = pot
                .profiles()
                .iter()
                .map(|p| {
                    json!({
                        "edge": p.edge,
                        "length": rational::format(&p.length),
                        "coefficients": p.coefficients.iter().map(rational::format).collect::<Vec<_>>(),
                        "integral": rational::format(&p.integral()),
                    })
                })
                .collect();
            Ok(Output::Json(json!({
                "capacity": exact(pot.capacity().clone()),
                "points": points,
                "profiles": profiles,
            })))
        }

        Command::Genus2 { tag, lengths } => {
            inputs.note(tag);
            lengths.iter().for_each(|l| inputs.note(l));
            let t: Genus2Type = tag.parse()?;
            let x: Vec<Rational> = lengths.iter().map(|s| rational::parse(s)).collect::<Result<_, _>>()?;
            let table = genus2::check_closed_form(t, &x)?;
            let g = genus2::build(t, &x)?;
            let identities = check_identities(&g, &genus2::documented_counts(t, &x)?)?;
            let mut ok = table.equal && identities.all_exact();
            let mut payload = json!({
                "graph": serde_json::from_str::<Value>(&g.to_json()).expect("graph json"),
                "closed_form_check": to_value(&table),
                "identities": to_value(&identities),
            });
            if t == Genus2Type::I {
                let sg = genus2::sunset_supergrav_crosscheck(&x)?;
                ok &= sg.equal;
                payload["tropical_leading_term"] = to_value(&sg);
            }
            checked(payload, ok)
        }

        Command::Hyperelliptic { graph, counts } => {
            let g = load_graph(inputs, graph)?;
            let c = NodeTypeCounts::from_json(&inputs.read(counts)?)?;
            let rep = check_identities(&g, &c)?;
            checked(to_value(&rep), rep.all_exact())
        }

        Command::Fit { family } => {
            let g = load_graph(inputs, family)?;
            let fit = fit_phi(&g, seed)?;
            checked(to_value(&fit), fit.transcript.validated)
        }

        Command::Oracle {
            graph,
            orders,
            quantity,
            tolerance,
            csv,
        } => {
            let g = load_graph(inputs, graph)?;
            let q = if quantity == "epsilon" { Quantity::Epsilon } else { Quantity::Phi };
            let rep = oracle::oracle_report(&g, q, orders)?;
            let monotone = rep.monotone();
            let ratios = rep.ratios_within(3.0, 5.0);
            let below = tolerance.map(|t| rep.final_error() < t);
            let ok = monotone && ratios && below.unwrap_or(true);
            if *csv {
                let mut out = String::from("order,approximation,error,ratio\n");
                for i in 0..rep.orders.len() {
                    let ratio = rep.ratios[i].map(|r| r.to_string()).unwrap_or_default();
                    out += &format!("{},{},{},{}\n", rep.orders[i], rep.approximations[i], rep.errors[i], ratio);
                }
                return Ok(Output::Text(out, ok));
            }
            let mut payload = to_value(&rep);
            payload["checks"] = json!({
                "monotone": monotone,
                "ratios_within_3_5": ratios,
                "final_below_tolerance": below,
            });
            checked(payload, ok)
        }

        Command::Probe {
            graph,
            from,
            edge,
            step,
            tolerance,
        } => {
            let g = load_graph(inputs, graph)?;
            let rep = oracle::laplacian_probe(&g, &point(from)?, edge, &rational::parse(step)?)?;
            let ok = rep.deviation < *tolerance;
            checked(to_value(&rep), ok)
        }

        Command::Subdivide { graph, trials } => {
            let g = load_graph(inputs, graph)?;
            let rep = oracle::subdivision_invariance_check(&g, *trials, seed)?;
            checked(to_value(&rep), rep.passed)
        }

        Command::Validate { graph } => {
            let g = load_graph(inputs, graph)?;
            Ok(Output::Json(to_value(&g.validate()?)))
        }
    }
}
