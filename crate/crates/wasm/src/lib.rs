//! Browser bindings. Each export returns a JSON string; exact values are
//! `{"num","den"}` pairs and every series also carries an `f64` copy for
//! plotting.

use harbourne_core::ballquotient::feasibility;
use harbourne_core::bounds::{global_bound, prop_c0_bound, thm47_bound};
use harbourne_core::num::decimal;
use harbourne_core::pullback::{generic_lines, lookup, pullback, LineArrangement};
use harbourne_core::{ArrangementProfile, NumClass, Rational, RuledSurface};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_STEPS: u32 = 400;

fn exact(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn approx(q: &Rational) -> f64 {
    decimal(q, 12).parse().unwrap_or(f64::NAN)
}

fn point(q: &Rational) -> Value {
    json!({ "exact": exact(q), "approx": approx(q) })
}

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn arrangement(name: &str) -> Result<LineArrangement, String> {
    if let Some(l) = lookup(name) {
        return Ok(l);
    }
    name.strip_prefix("generic-")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| format!("unknown arrangement `{name}`"))
        .and_then(|d| generic_lines(d).map_err(|e| e.to_string()))
}

/// Harbourne constant of the pull-back to `X_e` for `e = 4..=e_max`, next to
/// the `C0`-disjoint bound, the general bound and the global bound.
#[wasm_bindgen]
pub fn pullback_series(name: &str, e_max: u32) -> String {
    let l = match arrangement(name) {
        Ok(l) => l,
        Err(e) => return error(e),
    };
    let plane = match l.harbourne_constant() {
        Ok(h) => h,
        Err(e) => return error(e),
    };
    let mut rows = Vec::new();
    for e in 4..=i64::from(e_max.clamp(4, MAX_STEPS)) {
        let row = pullback(&l, e).and_then(|p| {
            Ok(json!({
                "e": e,
                "harbourne": point(&p.harbourne_constant()?),
                "prop_c0": point(&prop_c0_bound(&p)?.value),
                "thm47": point(&thm47_bound(&p)?),
                "global": point(&global_bound(p.surface, 1, e)?.value),
            }))
        });
        match row {
            Ok(r) => rows.push(r),
            Err(err) => return error(err),
        }
    }
    json!({ "name": name, "d": l.d, "plane_harbourne": point(&plane), "rows": rows }).to_string()
}

/// Generic arrangements of class `(a, b)` on `X_e` over a genus-`g` curve,
/// `d = 4..=d_max`: Harbourne constant against the general bound.
#[wasm_bindgen]
pub fn generic_series(g: u32, e: i32, a: i32, b: i32, d_max: u32) -> String {
    // 32-bit parameters keep the JS side on plain numbers instead of BigInt.
    let (e, a, b) = (i64::from(e), i64::from(a), i64::from(b));
    let s = RuledSurface::new(g, e);
    let cls = NumClass::new(a, b);
    let global = match global_bound(s, a, b) {
        Ok(gb) => gb,
        Err(err) => return error(err),
    };
    let mut rows = Vec::new();
    for d in 4..=d_max.clamp(4, MAX_STEPS) {
        let row = ArrangementProfile::generic(s, cls, d).and_then(|p| {
            let h = p.harbourne_constant()?;
            Ok(json!({ "d": d, "harbourne": point(&h), "thm47": point(&thm47_bound(&p)?) }))
        });
        match row {
            Ok(r) => rows.push(r),
            Err(err) => return error(err),
        }
    }
    json!({ "h": s.pairwise_intersection(cls).to_string(), "global": point(&global.value), "rows": rows })
        .to_string()
}

/// Ball-quotient verdicts on the `(a, d)` plane for fixed `g`, `e` and
/// `b = ae + b_offset`.
#[wasm_bindgen]
pub fn bq_heatmap(g: u32, e: i32, b_offset: i32, a_max: i32, d_max: u32) -> String {
    let (e, b_offset, a_max) = (i64::from(e), i64::from(b_offset), i64::from(a_max));
    let s = RuledSurface::new(g, e);
    let mut cells = Vec::new();
    for a in 1..=a_max.clamp(1, 40) {
        for d in 4..=d_max.clamp(4, MAX_STEPS) {
            match feasibility(s, a, a * e + b_offset, d) {
                Ok(v) => cells.push(json!({
                    "a": a,
                    "d": d,
                    "feasible": v.feasible,
                    "violated": v.violated.iter().map(|x| x.as_str()).collect::<Vec<_>>(),
                    "hc2": point(&v.hc2_value),
                    "t2": exact(&v.t2_required),
                    "t6": exact(&v.t6_required),
                })),
                Err(err) => return error(err),
            }
        }
    }
    json!({ "g": g, "e": e, "b_offset": b_offset, "cells": cells }).to_string()
}
