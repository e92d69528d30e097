use std::collections::BTreeMap;

use kummerlog::logdiv::{
    class_equal, log_pic_class, n_divisibility_witness, n_lifting, KummerLogGroup, MarkedBase,
    RationalDivisor,
};
use kummerlog::neron::{bad_reduction, tate, ComponentGroup, EllipticCurve, ReductionData};
use kummerlog::numring::{IdealClassGroup, NumberRing, PrimeIdeal};
use kummerlog::pairing::{CurvePairing, PairingOptions};
use kummerlog::Result;
use serde_json::{json, Value};

use crate::report::Report;

/// Pairing tables are printed in full up to this many components.
const TABLE_LIMIT: u64 = 32;

fn group_json(g: &IdealClassGroup) -> Value {
    json!({
        "order": g.order(),
        "invariants": g.invariants(),
        "generators": g.generators().iter().map(|i| i.to_string()).collect::<Vec<_>>(),
    })
}

pub fn logpic(rep: &mut Report, ring: &str, d: &str, div: Option<&str>) -> Result<Value> {
    let base = MarkedBase::parse(ring, d)?;
    let marked: Vec<String> = base.primes().iter().map(|p| p.to_string()).collect();
    let Some(div) = div else {
        return Ok(json!({
            "ring": base.ring().to_string(),
            "marked_primes": marked,
            "pic_s": group_json(base.class_group()),
            "pic_u": group_json(&base.pic_of_open()?),
            "nu_target": marked.iter().map(|p| json!({"prime": p, "group": "Q/Z"})).collect::<Vec<_>>(),
        }));
    };
    let divisor = RationalDivisor::parse(&base, div)?;
    let class = log_pic_class(&divisor)?;
    let order = class.order();
    let killed = class.scale(order as i64).is_trivial();
    rep.check("order_kills_class", killed, format!("{order} * class is trivial"));
    Ok(json!({
        "ring": base.ring().to_string(),
        "marked_primes": marked,
        "divisor": divisor.to_string(),
        "class": class.representative().to_string(),
        "ideal_class": class.ideal_class_coords(),
        "class_group_invariants": base.class_group().invariants(),
        "order": order,
        "nu": class.nu().to_string(),
        "trivial": class.is_trivial(),
    }))
}

pub fn mun(rep: &mut Report, ring: &str, d: &str, n: u64) -> Result<Value> {
    let base = MarkedBase::parse(ring, d)?;
    let g = KummerLogGroup::compute(&base, n)?;
    rep.check(
        "presentations_agree",
        g.orders_agree(),
        format!("log order {} vs open order {}", g.order(), g.open_order),
    );
    let mut lifted = 0;
    let mut failures = Vec::new();
    for omega in &g.kernel {
        let m = n_lifting(omega, n)?;
        match n_divisibility_witness(&m, n)? {
            Some(_) => lifted += 1,
            None => failures.push(m.to_string()),
        }
    }
    rep.check(
        "liftings_in_n_pic",
        failures.is_empty(),
        if failures.is_empty() {
            format!("canonical liftings checked: {lifted}")
        } else {
            format!("not in n Pic: {}", failures.join("; "))
        },
    );
    Ok(json!({
        "ring": base.ring().to_string(),
        "marked_primes": base.primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "n": n,
        "fppf_order": g.fppf_part_order,
        "kernel_order": g.kernel.len(),
        "kernel_generators": g.kernel_generators.iter()
            .map(|(w, o)| json!({"element": w.to_string(), "order": o}))
            .collect::<Vec<_>>(),
        "log_order": g.order(),
        "open_order": g.open_order,
    }))
}

fn form_table(g: &ComponentGroup) -> Result<Value> {
    if g.order() > TABLE_LIMIT {
        return Ok(Value::Null);
    }
    let cs = g.components();
    let mut rows = Vec::new();
    for &a in cs {
        let row: Result<Vec<String>> = cs.iter().map(|&b| Ok(g.pairing(a, b)?.to_string())).collect();
        rows.push(row?);
    }
    Ok(json!(rows))
}

fn reduction_json(rep: &mut Report, r: &ReductionData) -> Result<Value> {
    let g = r.component_group();
    let t = r.kodaira();
    rep.check(
        &format!("table_order_{}", r.prime()),
        g.order() == t.component_group_order(),
        format!("|Phi| = {} for {t}", g.order()),
    );
    Ok(json!({
        "prime": r.prime().to_string(),
        "kodaira": t.to_string(),
        "conductor_exponent": r.conductor_exponent(),
        "discriminant_valuation": r.minimal_discriminant_valuation(),
        "split": r.is_split(),
        "tamagawa": r.tamagawa_number(),
        "component_group": g.to_string(),
        "invariants": g.invariants(),
        "components": g.components(),
        "pairing_table": form_table(g)?,
    }))
}

/// Accepts a bare rational prime such as `11` as well as `(11)`.
fn parse_prime(ring: &NumberRing, s: &str) -> Result<PrimeIdeal> {
    let t = s.trim();
    if t.starts_with('(') {
        ring.parse_prime(t)
    } else {
        ring.parse_prime(&format!("({t})"))
    }
}

pub fn curve(rep: &mut Report, ring: &str, e: &str, p: Option<&str>) -> Result<Value> {
    let ring = NumberRing::parse(ring)?;
    let e = EllipticCurve::parse(&ring, e)?;
    let reductions = match p {
        Some(p) => vec![tate(&e, &parse_prime(&ring, p)?)?],
        None => bad_reduction(&e)?,
    };
    let data: Result<Vec<Value>> = reductions.iter().map(|r| reduction_json(rep, r)).collect();
    Ok(json!({
        "ring": ring.to_string(),
        "curve": e.to_string(),
        "discriminant": e.discriminant().to_string(),
        "bad_primes": reductions.iter().filter(|r| !r.kodaira().is_good()).map(|r| r.prime().to_string()).collect::<Vec<_>>(),
        "reductions": data?,
    }))
}

pub fn pair(rep: &mut Report, ring: &str, e: &str, x: &str, y: &str) -> Result<Value> {
    let ring = NumberRing::parse(ring)?;
    let e = EllipticCurve::parse(&ring, e)?;
    let (x, y) = (e.parse_point(x)?, e.parse_point(y)?);
    let c = CurvePairing::with_bad_primes(&e)?;
    let opts = PairingOptions::default();
    let v = c.log_class_pairing(&x, &y, &opts)?;
    let profile = c.monodromy_profile(&x, &y)?;
    let nu = v.class.nu();
    rep.check("nu_matches_profile", profile.matches(&nu), format!("nu = {nu}, profile = {profile}"));
    let killed = v.class.scale(v.order as i64).is_trivial();
    rep.check("order_kills_pairing", killed, format!("{} * class is trivial", v.order));
    if v.extension.is_none() && !v.translation.is_infinity() {
        let other = c.translation_candidates(&x, &y).into_iter().find(|t| *t != v.translation);
        if let Some(t) = other {
            let o = PairingOptions { translation: Some(t.clone()), ..opts.clone() };
            if let Ok(w) = c.log_class_pairing(&x, &y, &o) {
                rep.check(
                    "translation_independent",
                    class_equal(&w.class, &v.class)?,
                    format!("T = {} and T = {t}", v.translation),
                );
            }
        }
    }
    let profile_map: BTreeMap<String, String> =
        profile.iter().map(|(p, q)| (p.to_string(), q.to_string())).collect();
    let corrections: BTreeMap<String, String> =
        v.corrections.iter().map(|(p, q)| (p.to_string(), q.to_string())).collect();
    Ok(json!({
        "ring": ring.to_string(),
        "curve": e.to_string(),
        "x": x.to_string(),
        "y": y.to_string(),
        "order_y": v.order,
        "marked_primes": c.base().primes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "translation": v.translation.to_string(),
        "extension": v.extension,
        "divisor": v.divisor.to_string(),
        "class": v.class.representative().to_string(),
        "ideal_class": v.class.ideal_class_coords(),
        "nu": nu.to_string(),
        "profile": profile_map,
        "corrections": corrections,
    }))
}
