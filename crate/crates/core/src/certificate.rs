//! JSON certificates for both verdicts.
//!
//! ```json
//! {"kind": "degenerate", "theoryHash": "<sha256 hex>", "engine": "geosat/1",
//!  "body": {"nodes": [...], "root": 7}}
//! ```
//!
//! A degenerate body is a flat node table in children-first order; each
//! node lists its premises as `{"ref": id}` with `id` smaller than its own,
//! so deep proofs never nest. A nondegenerate body lists the minimal nodes
//! of a set `Z` together with `nodeCount = |Z|` and `emptyExcluded`; it is
//! valid when `∅ ∉ Z` and nothing outside `Z` is directly covered by `Z`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits;
use crate::dsl::serialize_theory;
use crate::error::{Error, Result};
use crate::logic::{KSet, Sequent, Theory, Universe};
use crate::proof::{check_refutation, extract_refutation, Derivation, Rule};
use crate::site::{degeneracy, upward_closure, DegeneracyTrace, NodeSet, Verdict};

pub const ENGINE: &str = "geosat/1";

/// Hex SHA-256 of the canonical serialization of `theory`.
pub fn theory_hash(theory: &Theory) -> String {
    hex::encode(Sha256::digest(serialize_theory(theory).as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Certificate {
    pub kind: Verdict,
    pub theory_hash: String,
    pub engine: String,
    pub body: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequentJson {
    pub premise: Vec<String>,
    pub disjuncts: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRef {
    #[serde(rename = "ref")]
    pub id: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    pub id: usize,
    pub rule: String,
    pub conclusion: SequentJson,
    pub premises: Vec<NodeRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefutationBody {
    pub nodes: Vec<NodeJson>,
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct WitnessBody {
    pub minimal: Vec<Vec<String>>,
    pub node_count: usize,
    pub empty_excluded: bool,
}

fn set_json(s: &KSet) -> Vec<String> {
    s.symbols().map(str::to_string).collect()
}

fn sequent_json(s: &Sequent) -> SequentJson {
    SequentJson {
        premise: set_json(&s.premise()),
        disjuncts: s.disjuncts().map(|q| set_json(&q)).collect(),
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

fn set_from_json(u: &Universe, names: &[String]) -> Result<KSet> {
    let mut bits = 0u64;
    for n in names {
        let i = u
            .index_of(n)
            .ok_or_else(|| malformed(format!("unknown symbol `{n}`")))?;
        if bits & (1 << i) != 0 {
            return Err(malformed(format!("symbol `{n}` repeated in a set")));
        }
        bits |= 1 << i;
    }
    Ok(u.set_unchecked(bits))
}

fn sequent_from_json(u: &Universe, s: &SequentJson) -> Result<Sequent> {
    let p = set_from_json(u, &s.premise)?;
    let ds = s
        .disjuncts
        .iter()
        .map(|q| set_from_json(u, q))
        .collect::<Result<Vec<_>>>()?;
    let seq = Sequent::new(p, ds.iter().cloned())?;
    // the serialized disjunct list must already be canonical
    if seq.disjunct_bits().len() != ds.len()
        || seq.disjunct_bits().iter().zip(&ds).any(|(&a, b)| a != b.bits())
    {
        return Err(malformed("disjuncts are not in canonical order"));
    }
    Ok(seq)
}

/// Serializes a derivation as a node table, children first.
pub fn refutation_body(d: &Derivation) -> RefutationBody {
    let order = d.postorder();
    let ids: HashMap<*const (), usize> = order
        .iter()
        .enumerate()
        .map(|(i, n)| (Derivation::id(n) as *const (), i))
        .collect();
    let nodes = order
        .iter()
        .enumerate()
        .map(|(i, n)| NodeJson {
            id: i,
            rule: n.rule().name().to_string(),
            conclusion: sequent_json(n.conclusion()),
            premises: n
                .premises()
                .iter()
                .map(|p| NodeRef {
                    id: ids[&(Derivation::id(p) as *const ())],
                })
                .collect(),
            p2: n.enlarged().map(set_json),
        })
        .collect();
    RefutationBody {
        nodes,
        root: order.len() - 1,
    }
}

/// Rebuilds the derivation of a node table; structural problems are errors,
/// rule violations are left to the checker.
pub fn derivation_from_body(u: &Universe, body: &RefutationBody) -> Result<Derivation> {
    let mut built: Vec<Derivation> = Vec::with_capacity(body.nodes.len());
    let mut referenced = vec![false; body.nodes.len()];
    for (i, node) in body.nodes.iter().enumerate() {
        if node.id != i {
            return Err(malformed(format!("node {i} carries id {}", node.id)));
        }
        let rule = Rule::from_name(&node.rule)
            .ok_or_else(|| malformed(format!("unknown rule `{}`", node.rule)))?;
        let premises = node
            .premises
            .iter()
            .map(|r| {
                if r.id >= i {
                    return Err(malformed(format!("node {i} refers forward to {}", r.id)));
                }
                referenced[r.id] = true;
                Ok(built[r.id].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let conclusion = sequent_from_json(u, &node.conclusion)?;
        let p2 = node.p2.as_ref().map(|s| set_from_json(u, s)).transpose()?;
        built.push(Derivation::from_parts(rule, conclusion, premises, p2));
    }
    if body.root + 1 != body.nodes.len() {
        return Err(malformed("root must be the last node"));
    }
    if let Some(i) = referenced[..body.root].iter().position(|r| !r) {
        return Err(malformed(format!("node {i} is not used")));
    }
    Ok(built[body.root].clone())
}

fn witness_body(trace: &DegeneracyTrace) -> WitnessBody {
    WitnessBody {
        minimal: trace.zset.minimal().iter().map(set_json).collect(),
        node_count: trace.zset.len(),
        empty_excluded: !trace.zset.contains(&trace.zset.universe().empty_set()),
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
    }
}

/// Decides `theory` and packages the evidence.
pub fn prove(theory: &Theory) -> Result<Certificate> {
    let trace = degeneracy(theory)?;
    certificate_from_trace(theory, &trace)
}

pub fn certificate_from_trace(theory: &Theory, trace: &DegeneracyTrace) -> Result<Certificate> {
    let body = match trace.verdict {
        Verdict::Degenerate => {
            let d = extract_refutation(theory, trace)?;
            serde_json::to_value(refutation_body(&d))
        }
        Verdict::Nondegenerate => serde_json::to_value(witness_body(trace)),
    }
    .expect("body serializes");
    Ok(Certificate {
        kind: trace.verdict,
        theory_hash: theory_hash(theory),
        engine: ENGINE.to_string(),
        body,
    })
}

/// Why a well-formed certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub locus: String,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.locus, self.reason)
    }
}

/// Checks `cert` against `theory`. `Err` for a hash mismatch or a
/// structurally malformed certificate, `Ok(Err(_))` for a well-formed
/// certificate whose evidence does not hold.
pub fn verify(theory: &Theory, cert: &Certificate) -> Result<std::result::Result<(), Rejection>> {
    if cert.engine != ENGINE {
        return Err(malformed(format!("unsupported engine `{}`", cert.engine)));
    }
    if cert.theory_hash != theory_hash(theory) {
        return Err(Error::HashMismatch);
    }
    let u = theory.universe();
    match cert.kind {
        Verdict::Degenerate => {
            let body: RefutationBody =
                serde_json::from_value(cert.body.clone()).map_err(|e| malformed(e.to_string()))?;
            let d = derivation_from_body(u, &body)?;
            Ok(check_refutation(theory, &d).map_err(|f| {
                // follow the path through the node table to name the node
                let mut id = body.root;
                for &i in &f.path {
                    id = body.nodes[id].premises[i].id;
                }
                Rejection {
                    locus: format!("node {id}"),
                    reason: f.reason.to_string(),
                }
            }))
        }
        Verdict::Nondegenerate => {
            let body: WitnessBody =
                serde_json::from_value(cert.body.clone()).map_err(|e| malformed(e.to_string()))?;
            verify_witness(theory, &body)
        }
    }
}

fn verify_witness(theory: &Theory, body: &WitnessBody) -> Result<std::result::Result<(), Rejection>> {
    let u = theory.universe();
    let n = u.size();
    let reject = |locus: &str, reason: String| {
        Ok(Err(Rejection {
            locus: locus.to_string(),
            reason,
        }))
    };
    let minimal = body
        .minimal
        .iter()
        .map(|s| set_from_json(u, s))
        .collect::<Result<Vec<_>>>()?;
    let mut seeds = bits::NodeBits::new(n);
    for m in &minimal {
        seeds.insert(m.bits());
    }
    let z = NodeSet::from_bits(u, upward_closure(&seeds, n, 0));
    let listed: Vec<KSet> = z.minimal();
    if listed != minimal {
        return reject("minimal", "not the canonical list of minimal nodes".into());
    }
    if z.len() != body.node_count {
        return reject(
            "nodeCount",
            format!("Z has {} nodes, certificate claims {}", z.len(), body.node_count),
        );
    }
    let empty_in_z = z.contains(&u.empty_set());
    if !body.empty_excluded || empty_in_z {
        return reject("emptyExcluded", "the empty node lies in Z".into());
    }
    for r in 0..=u.full_mask() {
        if z.contains_mask(r) {
            continue;
        }
        for (i, ax) in theory.axioms().iter().enumerate() {
            let p = ax.premise_bits();
            if bits::is_subset(p, r) && ax.disjunct_bits().iter().all(|&q| z.contains_mask(q | r)) {
                return reject(
                    &format!("node {}", u.format_mask(r)),
                    format!("directly covered by axiom {i} but outside Z"),
                );
            }
        }
    }
    Ok(Ok(()))
}
