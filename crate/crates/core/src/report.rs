//! End-to-end analysis and the report formats used by the command line tool.

use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coherent::CoherentPartition;
use crate::families::{self, FamilyInstance, FamilySpec};
use crate::graph::Graph;
use crate::holonomy::{HolonomyAction, DEFAULT_MAX_GROUP_ORDER};
use crate::hyperbolic::{self, HyperbolicError, HyperbolicityCertificate};
use crate::lie::GraphLieAlgebra;
use crate::perm::Permutation;
use crate::repdecomp::{trivial_holonomy_check, decide, Decision, Verdict};
use crate::witness::{construct_witness, Witness, WitnessError, WitnessOptions};
use crate::{Error, IntMatrix, IntPolynomial};

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub max_group_order: usize,
    pub witness: bool,
    pub witness_options: WitnessOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { max_group_order: DEFAULT_MAX_GROUP_ORDER, witness: false, witness_options: Default::default() }
    }
}

/// Splits `"(a b)(c d);(e f)"` into generators. Empty pieces are skipped.
pub fn parse_holonomy(g: &Graph, text: &str) -> Result<Vec<Permutation>, Error> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| g.parse_permutation(s).map_err(|e| Error::InvalidHolonomy(format!("{s}: {e}"))))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Timing {
    pub stages: Vec<(&'static str, f64)>,
}

impl Timing {
    fn to_json(&self) -> Value {
        let total: f64 = self.stages.iter().map(|(_, t)| t).sum();
        let mut m = serde_json::Map::new();
        for (name, t) in &self.stages {
            m.insert((*name).to_string(), json!(t));
        }
        json!({ "stages_ms": m, "total_ms": total })
    }
}

pub struct AnalysisReport {
    pub graph: Graph,
    pub partition: CoherentPartition,
    pub algebra: GraphLieAlgebra,
    pub action: HolonomyAction,
    pub decision: Decision,
    pub witness: Option<Result<Witness, WitnessError>>,
    pub timing: Timing,
}

impl AnalysisReport {
    pub fn verdict(&self) -> Verdict {
        self.decision.verdict
    }

    /// Everything except timing, with keys sorted.
    pub fn canonical_json(&self) -> Value {
        let g = &self.graph;
        let part = &self.partition;
        let a = &self.action;
        let orbits: Vec<Value> = (0..a.orbits().len())
            .map(|i| {
                let stab = a.stabilizer(i);
                json!({
                    "index": i + 1,
                    "components": a.orbits()[i].iter().map(|&c| part.name(c)).collect::<Vec<_>>(),
                    "rep": part.name(a.orbit_rep(i)),
                    "c": a.c_value(i),
                    "stabilizer_order": stab.order(),
                    "stabilizer_generator": stab.generator.map(|e| g.format_permutation(&a.elements()[e])),
                })
            })
            .collect();
        let mut report = json!({
            "graph": {
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "connected": g.is_connected(),
                "degree_sequence": g.degree_sequence(),
            },
            "algebra": {
                "dim_v": self.algebra.dim_v(),
                "dim_w": self.algebra.dim_w(),
                "dimension": self.algebra.dim(),
            },
            "partition": part.to_json(g),
            "holonomy": {
                "generators": a.generators().iter().map(|p| g.format_permutation(p)).collect::<Vec<_>>(),
                "order": a.order(),
                "cyclic": a.is_cyclic(),
                "orbits": orbits,
            },
            "decision": self.decision.to_json(part),
        });
        if a.generators().is_empty() {
            report["trivial_holonomy_check"] = json!(trivial_holonomy_check(part).as_str());
        }
        if let Some(w) = &self.witness {
            report["witness"] = match w {
                Ok(w) => w.to_json(g, part, a),
                Err(e) => json!({ "error": e.to_string() }),
            };
        }
        report
    }

    pub fn canonical_string(&self) -> String {
        serde_json::to_string_pretty(&self.canonical_json()).expect("values serialize")
    }

    /// Canonical report plus timing under a separate key.
    pub fn to_json(&self) -> Value {
        json!({ "report": self.canonical_json(), "timing": self.timing.to_json() })
    }

    pub fn to_text(&self) -> String {
        let part = &self.partition;
        let mut s = format!(
            "graph: {} vertices, {} edges; algebra dimension {}\n",
            self.graph.vertex_count(),
            self.graph.edge_count(),
            self.algebra.dim()
        );
        for i in 0..part.len() {
            let names: Vec<&str> = part.component(i).iter().map(|&v| self.graph.label(v)).collect();
            s += &format!(
                "{} = {{{}}}{}\n",
                part.name(i),
                names.join(", "),
                if part.has_loop(i) { " (loop)" } else { "" }
            );
        }
        s += &format!("holonomy order {}\n", self.action.order());
        for o in &self.decision.orbits {
            let names: Vec<String> = o.orbit.iter().map(|&c| part.name(c)).collect();
            let pass = match o.pass {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "undecided",
            };
            s += &format!("orbit {{{}}}: c = {}, {} ({})\n", names.join(", "), o.c, pass, o.reason);
        }
        s += &format!(
            "verdict: {}; realizability: {}\n",
            self.decision.verdict.as_str(),
            serde_json::to_value(self.decision.realizability).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
        );
        match &self.witness {
            Some(Ok(w)) => s += &w.proof_sketch(&self.graph, part, &self.action),
            Some(Err(e)) => s += &format!("witness: {e}\n"),
            None => {}
        }
        s
    }
}

/// Runs partition, holonomy, decision and, on request, the witness.
pub fn analyze(graph_text: &str, holonomy: &str, opts: &AnalysisOptions) -> Result<AnalysisReport, Error> {
    let mut stages = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, stages: &mut Vec<(&'static str, f64)>| {
        stages.push((name, clock.elapsed().as_secs_f64() * 1e3));
        clock = Instant::now();
    };
    let graph = Graph::parse(graph_text)?;
    let gens = parse_holonomy(&graph, holonomy)?;
    lap("parse", &mut stages);
    let partition = CoherentPartition::of(&graph);
    let algebra = GraphLieAlgebra::new(&graph);
    lap("partition", &mut stages);
    let action = HolonomyAction::build(&graph, &partition, &gens, opts.max_group_order)?;
    lap("holonomy", &mut stages);
    let decision = decide(&action, &partition);
    lap("decision", &mut stages);
    let witness = if opts.witness {
        let w = construct_witness(&graph, &partition, &action, &algebra, &opts.witness_options);
        if let Err(WitnessError::Cancelled(c)) = w {
            return Err(c.into());
        }
        lap("witness", &mut stages);
        Some(w)
    } else {
        None
    };
    Ok(AnalysisReport { graph, partition, algebra, action, decision, witness, timing: Timing { stages } })
}

/// Quotient graph as JSON and DOT.
pub fn quotient(graph_text: &str) -> Result<(Value, String), Error> {
    let g = Graph::parse(graph_text)?;
    let part = CoherentPartition::of(&g);
    Ok((part.to_json(&g), part.to_dot(&g)))
}

pub fn family(spec: &FamilySpec) -> Result<FamilyInstance, Error> {
    Ok(families::generate(spec)?)
}

/// Parses a matrix written as JSON rows `[[2,1],[1,1]]` or as rows separated
/// by `;` or newlines with whitespace or comma separated entries.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, Error> {
    let t = text.trim();
    let rows: Vec<Vec<BigInt>> = if t.starts_with('[') {
        let v: Vec<Vec<serde_json::Number>> =
            serde_json::from_str(t).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
        v.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| x.to_string().parse::<BigInt>().map_err(|_| Error::Parse(format!("matrix entry {x}"))))
                    .collect()
            })
            .collect::<Result<_, _>>()?
    } else {
        t.split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<BigInt>().map_err(|_| Error::Parse(format!("matrix entry {x:?}"))))
                    .collect()
            })
            .collect::<Result<_, _>>()?
    };
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Parse("matrix rows are empty or of unequal length".into()));
    }
    Ok(IntMatrix::from_rows(rows))
}

/// Certifies a matrix, or the companion matrix of a monic polynomial, at
/// level `c`. Input containing `x` is read as a polynomial.
pub fn certify(input: &str, c: u8) -> Result<HyperbolicityCertificate, Error> {
    let m = if input.contains('x') {
        let p: IntPolynomial = input.parse()?;
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::Hyperbolic(HyperbolicError::ZeroPolynomial));
        }
        if !p.is_monic() {
            return Err(Error::Hyperbolic(HyperbolicError::NotMonic(p.to_string())));
        }
        IntMatrix::companion(&p)
    } else {
        parse_matrix(input)?
    };
    Ok(hyperbolic::is_c_hyperbolic(&m, c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example_reports() {
        let r = analyze(fixtures::FOUR_COMPONENT_PATH_TEXT, fixtures::FOUR_COMPONENT_PATH_SWAP, &Default::default())
            .unwrap();
        assert_eq!(r.verdict(), Verdict::No);
        let j = r.canonical_json();
        assert_eq!(j["decision"]["verdict"], "no");
        assert_eq!(j["holonomy"]["orbits"][1]["c"], 2);

        let c5 = fixtures::five_cycle().to_json().to_string();
        let r = analyze(&c5, "", &Default::default()).unwrap();
        assert_eq!(r.verdict(), Verdict::No);
        assert_eq!(r.canonical_json()["trivial_holonomy_check"], "no");
    }

    #[test]
    fn k33_with_witness() {
        let k33 = fixtures::k33().to_json().to_string();
        let opts = AnalysisOptions { witness: true, ..Default::default() };
        let r = analyze(&k33, "(a1 b1)(a2 b2)(a3 b3)", &opts).unwrap();
        assert_eq!(r.verdict(), Verdict::Yes);
        let j = r.canonical_json();
        assert_eq!(j["witness"]["dimension"], 15);
        assert!(r.to_text().contains("verdict: yes"));
        assert!(r.to_json()["timing"]["total_ms"].is_number());
        assert_eq!(r.canonical_string(), analyze(&k33, "(a1 b1)(a2 b2)(a3 b3)", &opts).unwrap().canonical_string());
    }

    #[test]
    fn witness_refusal_is_reported() {
        let opts = AnalysisOptions { witness: true, ..Default::default() };
        let r = analyze(fixtures::FOUR_COMPONENT_PATH_TEXT, fixtures::FOUR_COMPONENT_PATH_SWAP, &opts).unwrap();
        assert!(r.canonical_json()["witness"]["error"].as_str().unwrap().contains("not yes"));
    }

    #[test]
    fn input_errors() {
        let k33 = fixtures::k33().to_json().to_string();
        assert_eq!(analyze("a b", "", &Default::default()).err().map(|e| e.exit_code()), Some(3));
        assert_eq!(analyze(&k33, "(a1 b1)", &Default::default()).err().map(|e| e.exit_code()), Some(4));
        assert_eq!(analyze(&k33, "(a1 zz)", &Default::default()).err().map(|e| e.exit_code()), Some(4));
        let opts = AnalysisOptions { max_group_order: 1, ..Default::default() };
        assert_eq!(analyze(&k33, "(a1 b1)(a2 b2)(a3 b3)", &opts).err().map(|e| e.exit_code()), Some(5));
    }

    #[test]
    fn certify_inputs() {
        let c = certify("x^2-3x+1", 1).unwrap();
        assert!(c.valid);
        let c = certify("[[2,1],[1,1]]", 2).unwrap();
        assert!(!c.valid);
        assert!(c.reason.unwrap().starts_with("pair product on unit circle"));
        assert!(certify("2 1; 1 1", 1).unwrap().valid);
        assert!(!certify("x^2 + x + 1", 1).unwrap().valid);
        assert_eq!(certify("2x^2 + 1", 1).err().map(|e| e.exit_code()), Some(3));
        assert_eq!(certify("1 2 3; 4 5", 1).err().map(|e| e.exit_code()), Some(3));
    }

    #[test]
    fn quotient_output() {
        let (j, dot) = quotient(fixtures::THREE_COMPONENT_PATH_TEXT).unwrap();
        assert_eq!(j["components"].as_array().unwrap().len(), 3);
        assert!(dot.starts_with("graph quotient {"));
        assert_eq!(family(&FamilySpec::II { n: 4, l: 3 }).err().map(|e| e.exit_code()), Some(8));
    }
}
