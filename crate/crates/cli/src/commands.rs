use gfe_core::arith::{default_precision, is_prime, parse_rational, Padic, Poly, Rational};
use gfe_core::elliptic::EllPoint;
use gfe_core::frey::{classify, search_solutions, verify_known_solutions, CurveMatch};
use gfe_core::galois::{
    det_pattern, embed_dic12, embed_h8, ko_symplectic, normalizer_and_centralizer, symplectic_type_of_matrix,
    tate_equivariance_check, tate_module_matrix, DetPattern,
};
use gfe_core::modcurve::{
    elliptic_log_2adic, local_solubility_bruteforce, local_solubility_report, x011_data, x011_rational_points,
    x013_jmap, xns_twist_point_search, KernelPoint, TWISTS_13,
};
use gfe_core::twist::{derive_twist_table, same_plan, twist_table, TwistPlanEntry};
use gfe_core::verify::{run_all, Level};
use gfe_core::GfeError;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::render::{opt_rat, padic, rat, side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

pub struct Outcome {
    pub status: Status,
    pub payload: Value,
    pub citations: Vec<&'static str>,
}

/// Bad input that clap cannot catch (exit code 2).
#[derive(Debug)]
pub struct Usage(pub String);

pub enum Failure {
    Usage(Usage),
    Compute(GfeError),
}

impl From<GfeError> for Failure {
    fn from(e: GfeError) -> Self {
        Failure::Compute(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

pub type Res = std::result::Result<Outcome, Failure>;

fn ok(payload: Value, citations: Vec<&'static str>) -> Res {
    Ok(Outcome { status: Status::Ok, payload, citations })
}

fn checked(pass: bool, payload: Value, citations: Vec<&'static str>) -> Res {
    Ok(Outcome { status: if pass { Status::Ok } else { Status::Violation }, payload, citations })
}

/// A rational, or `inf` for the point at infinity.
pub fn parse_point(s: &str) -> std::result::Result<Option<Rational>, Usage> {
    if s.trim().eq_ignore_ascii_case("inf") {
        return Ok(None);
    }
    parse_rational(s).map(Some).ok_or_else(|| Usage(format!("not a rational number: {s}")))
}

pub fn classify_cmd(a: &BigInt, b: &BigInt) -> Res {
    let c = classify(a, b)?;
    let (i2, d2, c2, v2, j2, w2) = side(&c.at2);
    let (i3, d3, c3, v3, j3, w3) = side(&c.at3);
    let curve = match &c.curve {
        Some(CurveMatch::Curve(l)) => json!(l),
        Some(CurveMatch::Incompatible) => json!("Incompatible"),
        None => Value::Null,
    };
    ok(
        json!({
            "a": a.to_string(), "b": b.to_string(),
            "i2": i2, "i3": i3,
            "dSet": { "2": d2, "3": d3 },
            "curves": { "2": c2, "3": c3 },
            "v2N": v2, "v3N": v3,
            "jdisk2": j2, "jdisk3": j3,
            "witness2": w2, "witness3": w3,
            "curve": curve,
        }),
        vec!["2-adic classification", "3-adic classification", "curve table"],
    )
}

pub fn search_cmd(p: u32, bound: u64) -> Res {
    if bound == 0 {
        return Err(Usage("bound must be at least 1".into()).into());
    }
    let sols = search_solutions(p, bound);
    let rows: Vec<Value> = sols
        .iter()
        .map(|s| {
            json!({
                "a": s.a.to_string(), "b": s.b.to_string(), "c": s.c.to_string(),
                "kind": format!("{:?}", s.kind()), "primitive": s.is_primitive(),
            })
        })
        .collect();
    ok(json!({ "p": p, "bound": bound, "count": rows.len(), "solutions": rows }), vec!["solution search"])
}

pub fn verify_known_cmd() -> Res {
    let checks = verify_known_solutions();
    let pass = checks.iter().all(|c| c.holds && c.primitive);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            let t = &c.triple;
            json!({
                "a": t.a.to_string(), "b": t.b.to_string(), "c": t.c.to_string(), "n": t.p,
                "holds": c.holds, "primitive": c.primitive, "kind": format!("{:?}", c.kind),
            })
        })
        .collect();
    checked(pass, json!({ "count": rows.len(), "identities": rows }), vec!["known solutions"])
}

fn plan_json(plan: &[TwistPlanEntry], with_provenance: bool) -> Value {
    let mut m = Map::new();
    for e in plan {
        let signs: String = e.signs.iter().map(|s| s.symbol()).collect();
        let v = if with_provenance {
            let prov: Vec<String> = e.provenance.iter().map(|r| format!("{r:?}")).collect();
            json!({ "signs": signs, "provenance": prov })
        } else {
            json!(signs)
        };
        m.insert(e.label.clone(), v);
    }
    Value::Object(m)
}

pub fn twistplan_cmd(p: u64, derived: bool) -> Res {
    if !is_prime(p) {
        return Err(GfeError::CompositeP(p).into());
    }
    let table = twist_table(p)?;
    let rules = derive_twist_table(p)?;
    let agree = same_plan(&table, &rules);
    let plan = if derived { plan_json(&rules, true) } else { plan_json(&table, false) };
    checked(
        agree,
        json!({ "p": p, "residue": p % 24, "plan": plan, "derivedMatchesTable": agree }),
        vec!["twist table"],
    )
}

pub fn glgroup_cmd(p: u64, group: &str) -> Res {
    let (h, want) = match group {
        "h8" => (embed_h8(p)?, 24),
        "dic12" => (embed_dic12(p)?, 12),
        _ => return Err(Usage(format!("unknown group {group}; use h8 or dic12")).into()),
    };
    let nd = normalizer_and_centralizer(&h)?;
    let census: Map<String, Value> = h.order_census().into_iter().map(|(o, n)| (o.to_string(), json!(n))).collect();
    let (pattern, square_order) = match det_pattern(&h)? {
        DetPattern::AllSquare => ("AllSquare", nd.normalizer.len()),
        DetPattern::IndexTwoSquare(s) => ("IndexTwoSquare", s.len()),
    };
    let quotient = nd.quotient_order(p);
    checked(
        quotient == want,
        json!({
            "p": p, "group": group, "order": h.order(), "census": census,
            "normalizerOrder": nd.normalizer.len(), "centralizerOrder": nd.centralizer.len(),
            "quotientOrder": quotient, "detPattern": pattern, "squareDetOrder": square_order,
        }),
        vec!["normalizer census"],
    )
}

pub fn tate_module_cmd(ell: u64, p: u64, e1: i64, e2: i64) -> Res {
    let t = tate_module_matrix(ell, p, e1, e2)?;
    let equivariant = tate_equivariance_check(&t);
    let of_matrix = symplectic_type_of_matrix(&t.intertwiner());
    let criterion = ko_symplectic(e1, e2, p)?;
    checked(
        equivariant && of_matrix == criterion,
        json!({
            "ell": ell, "p": p, "e1": e1, "e2": e2, "n": t.n, "m": t.m,
            "equivariant": equivariant,
            "matrixType": format!("{of_matrix:?}"), "criterionType": format!("{criterion:?}"),
        }),
        vec!["Tate-module symplectic criterion"],
    )
}

pub fn x011_points_cmd() -> Res {
    let d = x011_data();
    let ids = d.check_identities();
    let pts: Vec<Value> = x011_rational_points()
        .iter()
        .map(|pt| {
            let j = d.j_of_point(pt);
            let (x, y) = match pt {
                EllPoint::Affine(x, y) => (Some(x.clone()), Some(y.clone())),
                EllPoint::Infinity => (None, None),
            };
            json!({
                "x": opt_rat(x.as_ref()), "y": opt_rat(y.as_ref()), "j": opt_rat(j.as_ref()),
                "onRelation": d.f_vanishes(x.as_ref(), j.as_ref()),
            })
        })
        .collect();
    let pass = ids.all() && pts.iter().all(|p| p["onRelation"] == json!(true));
    checked(
        pass,
        json!({ "identities": serde_json::to_value(&ids).expect("plain struct"), "points": pts }),
        vec!["X0(11) j-map"],
    )
}

pub fn x011_fj_cmd(x: &str, j: &str) -> Res {
    let (x, j) = (parse_point(x)?, parse_point(j)?);
    let vanishes = x011_data().f_vanishes(x.as_ref(), j.as_ref());
    ok(json!({ "x": opt_rat(x.as_ref()), "j": opt_rat(j.as_ref()), "vanishes": vanishes }), vec!["X0(11) relation"])
}

pub fn x011_log_cmd(t: &str, prec: Option<u32>) -> Res {
    let prec = prec.unwrap_or_else(default_precision);
    let t = parse_point(t)?.ok_or_else(|| Usage("t must be finite".into()))?;
    let p = KernelPoint::from_t(Padic::from_rational(&t, 2, prec + 8))?;
    let log = elliptic_log_2adic(&p, prec)?;
    ok(
        json!({ "t": rat(&t), "filtration": p.filtration(), "log": padic(&log) }),
        vec!["2-adic kernel of reduction"],
    )
}

pub fn xns_cmd(d: i64, height: u64) -> Res {
    let pts = xns_twist_point_search(d, height)?;
    let xs: Vec<Value> = pts.iter().map(|x| opt_rat(x.as_ref())).collect();
    ok(json!({ "d": d, "height": height, "count": xs.len(), "points": xs }), vec!["non-split Cartan twists"])
}

pub fn parse_coeffs(s: &str) -> std::result::Result<Poly<BigInt>, Usage> {
    let cs: std::result::Result<Vec<BigInt>, _> = s.split(',').map(|c| c.trim().parse::<BigInt>()).collect();
    cs.map(Poly::new).map_err(|_| Usage(format!("coefficients must be comma-separated integers: {s}")))
}

pub fn localsolve_cmd(coeffs: Option<&str>, row: Option<usize>, ell: u64, oracle: bool) -> Res {
    let f = match (coeffs, row) {
        (Some(c), None) => parse_coeffs(c)?,
        (None, Some(i)) => TWISTS_13
            .iter()
            .find(|r| r.index as usize == i)
            .ok_or_else(|| Usage(format!("twist rows are numbered 1..=8, got {i}")))?
            .poly(),
        _ => return Err(Usage("give exactly one of --coeffs and --twist-row".into()).into()),
    };
    if !is_prime(ell) {
        return Err(GfeError::CompositeP(ell).into());
    }
    let rep = local_solubility_report(&f, ell);
    let scan = if oracle { Some(local_solubility_bruteforce(&f, ell)?) } else { None };
    let agree = scan.map_or(true, |s| s == rep.soluble);
    let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    checked(
        agree,
        json!({
            "coeffs": coeffs, "ell": ell, "soluble": rep.soluble, "reason": rep.reason,
            "discValuation": rep.disc_valuation, "maxDepth": rep.max_depth, "disksVisited": rep.disks_visited,
            "oracle": scan,
        }),
        vec!["local solubility"],
    )
}

pub fn x013_cmd(v: &str) -> Res {
    let v = parse_point(v)?;
    let j = x013_jmap(v.as_ref());
    ok(json!({ "v": opt_rat(v.as_ref()), "j": opt_rat(j.as_ref()) }), vec!["X0(13) j-map"])
}

pub fn verify_paper_cmd(level: Level) -> Res {
    let results = run_all(level);
    let passed = results.iter().filter(|r| r.passed).count();
    let total = results.len();
    let rows = serde_json::to_value(&results).expect("plain structs");
    checked(
        passed == total,
        json!({ "level": level, "passed": passed, "total": total, "criteria": rows }),
        vec!["acceptance suite"],
    )
}
