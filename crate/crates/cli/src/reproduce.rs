//! The `reproduce-paper` command. The check list lives in
//! `manifest/reproduce.json`, shared with the acceptance suite.

use std::sync::Arc;

use hkcover_core::betti::classify_cover_types;
use hkcover_core::lattice::{
    branch_component_bound, negative_definite_embedding, q_exceptional, signature, DivisorClass,
    Lattice,
};
use hkcover_core::monodromy::{commuting_orders_possible, galois_like_obstruction};
use hkcover_core::orders::{abelian_order_feasible, alpha, euler_phi};
use hkcover_core::rational::{format_rational, parse_rational};
use hkcover_core::zariski::{certify, enumerate_valid_supports, zariski_decompose, PrimeSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::instances::{exceptional_instance, hyperbolic_instance};
use crate::report::{CmdError, Report};

pub const MANIFEST_JSON: &str = include_str!("../manifest/reproduce.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Check {
    pub id: String,
    pub criterion: u32,
    pub anchor: String,
    pub kind: String,
    /// Keys ending in `_include` list items that must appear in the
    /// observed array of the same stem; other keys must match exactly.
    pub expect: Map<String, Value>,
    #[serde(flatten)]
    pub params: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub criterion: u32,
    pub anchor: String,
    pub passed: bool,
    pub observed: Value,
    /// Set when the check could not run at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn manifest() -> Manifest {
    serde_json::from_str(MANIFEST_JSON).expect("embedded manifest is valid")
}

fn param_u64(c: &Check, key: &str) -> Result<u64, String> {
    c.params
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| format!("{}: missing integer parameter {key}", c.id))
}

fn param_i64(c: &Check, key: &str) -> Result<i64, String> {
    c.params
        .get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| format!("{}: missing integer parameter {key}", c.id))
}

fn observe(c: &Check) -> Result<Value, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match c.kind.as_str() {
        "alpha" => {
            let d = param_u64(c, "d")?;
            Ok(
                json!({ "alpha": alpha(d).map_err(|e| err(&e))?, "phi": euler_phi(d).map_err(|e| err(&e))? }),
            )
        }
        "abelian-order" => {
            let (g, d) = (param_u64(c, "g")?, param_u64(c, "d")?);
            let rep = abelian_order_feasible(g, d).map_err(|e| err(&e))?;
            Ok(json!({ "feasible": rep.feasible, "phi_exceeds_2g": rep.phi > 2 * g }))
        }
        "obstruction" => {
            let rep = galois_like_obstruction(param_u64(c, "n")?, param_u64(c, "g")?)
                .map_err(|e| err(&e))?;
            Ok(json!({ "obstructed": rep.obstructed, "witness_primes": rep.witness_primes }))
        }
        "commuting" => {
            let (n, p, q) = (param_u64(c, "n")?, param_u64(c, "p")?, param_u64(c, "q")?);
            Ok(json!({ "possible": commuting_orders_possible(n, p, q).map_err(|e| err(&e))? }))
        }
        "cover-types" => {
            let rep = classify_cover_types(param_i64(c, "b2")?, param_i64(c, "rho")?)
                .map_err(|e| err(&e))?;
            let mut labels: Vec<String> = rep
                .feasible
                .iter()
                .map(|f| format!("({},{})", f.label.0, f.label.1))
                .collect();
            labels.sort();
            let exclusions: Vec<&str> = rep
                .trace
                .iter()
                .flat_map(|t| {
                    t.records
                        .iter()
                        .filter(|r| !r.passed)
                        .map(|r| r.detail.as_str())
                })
                .collect();
            Ok(json!({ "feasible": labels, "exclusions": exclusions }))
        }
        "branch-bound" => Ok(
            json!({ "bound": branch_component_bound(param_u64(c, "b2")?).map_err(|e| err(&e))? }),
        ),
        "branch-bound-range" => {
            let (from, to) = (param_u64(c, "from")?, param_u64(c, "to")?);
            let all = (from..=to).all(|b2| branch_component_bound(b2) == Ok(b2 - 3));
            Ok(json!({ "all_equal_b2_minus_3": all }))
        }
        "embedding" => {
            let (l, classes) =
                negative_definite_embedding(param_u64(c, "b2")?).map_err(|e| err(&e))?;
            let exc = q_exceptional(&l, &classes).map_err(|e| err(&e))?;
            Ok(
                json!({ "rank": classes.len(), "q_exceptional": exc, "signature": signature(&l).to_string() }),
            )
        }
        "zariski-collapse" => {
            let square = param_i64(c, "square")?;
            let m = c
                .params
                .get("multiplicity")
                .and_then(Value::as_str)
                .ok_or_else(|| format!("{}: missing multiplicity", c.id))?;
            let m = parse_rational(m).map_err(|e| err(&e))?;
            let l = Arc::new(Lattice::from_int_gram(&[vec![square]], &["E"]).map_err(|e| err(&e))?);
            let e = DivisorClass::basis(&l, 0).map_err(|e| err(&e))?;
            let d = DivisorClass::new(&l, vec![m]).map_err(|e| err(&e))?;
            let s = PrimeSystem::new(&l, vec![e], None).map_err(|e| err(&e))?;
            let dec = zariski_decompose(&s, &d).map_err(|e| err(&e))?;
            let negative: Map<String, Value> = dec
                .negative_coeffs
                .iter()
                .map(|(i, a)| (i.to_string(), json!(format_rational(a))))
                .collect();
            let positive: Vec<String> = dec.positive.coeffs().iter().map(format_rational).collect();
            Ok(
                json!({ "positive": positive, "negative": negative, "certified": certify(&s, &d, &dec).all() }),
            )
        }
        "zariski-random-collapse" => {
            let mut rng = ChaCha8Rng::seed_from_u64(param_u64(c, "seed")?);
            let mut collapsed = 0;
            for _ in 0..param_u64(c, "count")? {
                let k = rng.gen_range(1..=4);
                let inst = exceptional_instance(&mut rng, k);
                let ok = zariski_decompose(&inst.system, &inst.class).is_ok_and(|dec| {
                    dec.positive.is_zero()
                        && dec.negative_part(&inst.system) == inst.class
                        && certify(&inst.system, &inst.class, &dec).all()
                });
                collapsed += u64::from(ok);
            }
            Ok(json!({ "collapsed": collapsed }))
        }
        "zariski-random-uniqueness" => {
            let mut rng = ChaCha8Rng::seed_from_u64(param_u64(c, "seed")?);
            let mut unique = 0;
            for _ in 0..param_u64(c, "count")? {
                let k = rng.gen_range(1..=4);
                let inst = hyperbolic_instance(&mut rng, k);
                let valid = enumerate_valid_supports(&inst.system, &inst.class);
                let ok = zariski_decompose(&inst.system, &inst.class).is_ok_and(|dec| {
                    valid == [dec.support.clone()] && certify(&inst.system, &inst.class, &dec).all()
                });
                unique += u64::from(ok);
            }
            Ok(json!({ "unique": unique }))
        }
        other => Err(format!("{}: unknown check kind {other}", c.id)),
    }
}

fn matches(expect: &Map<String, Value>, observed: &Value) -> bool {
    expect
        .iter()
        .all(|(key, want)| match key.strip_suffix("_include") {
            Some(stem) => {
                let have = observed
                    .get(format!("{stem}s"))
                    .or_else(|| observed.get(stem))
                    .and_then(Value::as_array);
                let want = want.as_array();
                match (have, want) {
                    (Some(have), Some(want)) => want.iter().all(|w| have.contains(w)),
                    _ => false,
                }
            }
            None => observed.get(key) == Some(want),
        })
}

pub fn run_check(c: &Check) -> CheckOutcome {
    let (passed, observed, error) = match observe(c) {
        Ok(v) => (matches(&c.expect, &v), v, None),
        Err(e) => (false, Value::Null, Some(e)),
    };
    CheckOutcome {
        id: c.id.clone(),
        criterion: c.criterion,
        anchor: c.anchor.clone(),
        passed,
        observed,
        error,
    }
}

pub fn run_all() -> Vec<CheckOutcome> {
    manifest().checks.iter().map(run_check).collect()
}

pub fn run_manifest() -> Result<Report, CmdError> {
    let m: Manifest = serde_json::from_str(MANIFEST_JSON)
        .map_err(|e| CmdError::new("ParseError", format!("manifest: {e}")))?;
    let outcomes: Vec<CheckOutcome> = m.checks.iter().map(run_check).collect();
    let mut r = Report::new("reproduce-paper").input("manifest_version", m.version);
    for o in &outcomes {
        r.certificate(&o.id, o.passed);
        r.row(&o.id, o.passed, &o.anchor);
    }
    r.field("checks", &outcomes);
    r.field("passed", outcomes.iter().filter(|o| o.passed).count());
    r.field("total", outcomes.len());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn include_keys_match_plural_arrays() {
        let expect: Map<String, Value> =
            serde_json::from_str(r#"{"exclusions_include":["a"],"x":1}"#).unwrap();
        assert!(matches(&expect, &json!({"exclusions": ["b", "a"], "x": 1})));
        assert!(!matches(&expect, &json!({"exclusions": ["b"], "x": 1})));
        assert!(!matches(&expect, &json!({"exclusions": ["a"], "x": 2})));
    }

    #[test]
    fn manifest_ids_are_unique() {
        let m = manifest();
        let mut ids: Vec<&str> = m.checks.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), m.checks.len());
    }

    #[test]
    fn unknown_kind_fails_cleanly() {
        let c: Check = serde_json::from_str(
            r#"{"id":"x","criterion":0,"anchor":"a","kind":"nope","expect":{}}"#,
        )
        .unwrap();
        let o = run_check(&c);
        assert!(!o.passed && o.error.is_some());
    }
}
