//! One function per subcommand, each producing a [`Report`].

use std::collections::HashMap;

use lieform::decompose::{
    count_forms, decompose_indecomposable, krull_schmidt_match, verify_decomposition, Certificate, Decomposition,
    MatchResult,
};
use lieform::fields::{galois_group, Automorphism, Field, FieldElement, Irreducibility};
use lieform::galois::{conjugate, extend_scalars, restrict_scalars, verify_sumconjugate};
use lieform::liealg::{fingerprint, LieAlgebra};
use lieform::oracle::iso_oracle;
use lieform::pfaffian::{invariant_c, invariant_s, invariant_t, pfaffian_form};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::refs::Context;

/// Verdict carried by a successful run; errors carry their own exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Refuted,
    Unknown,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Refuted => 1,
            Outcome::Unknown => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub outcome: Outcome,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(outcome: Outcome, lines: Vec<String>, json: Value) -> Report {
        let mut text = lines.join("\n");
        text.push('\n');
        Report { outcome, text, json }
    }
}

fn algebra_text(l: &LieAlgebra) -> Vec<String> {
    l.to_string().lines().map(str::to_string).collect()
}

fn vector_text(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn entity_json(ctx: &Context, name: &str, l: &LieAlgebra) -> Value {
    serde_json::to_value(ctx.entity(name, l)).expect("plain data")
}

fn entity_line(ctx: &Context, name: &str, l: &LieAlgebra) -> String {
    serde_json::to_string(&ctx.entity(name, l)).expect("plain data")
}

pub fn check(ctx: &Context, reference: &str) -> CliResult<Report> {
    let l = match ctx.algebra(reference) {
        Err(CliError::Library(lieform::Error::JacobiFailure(i, j, k))) => {
            return Ok(Report::new(
                Outcome::Refuted,
                vec![format!("jacobi: fails on basis triple ({i}, {j}, {k})")],
                json!({ "jacobi": false, "triple": [i, j, k] }),
            ));
        }
        r => r?,
    };
    let fp = fingerprint(&l);
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
    let irreducibility = match l.field().irreducibility() {
        Irreducibility::Verified => "verified",
        Irreducibility::Unverified => "unverified",
    };
    let mut lines = vec![
        "jacobi: ok".to_string(),
        format!("minimal polynomials: {irreducibility}"),
    ];
    lines.extend(algebra_text(&l));
    lines.push(format!("lower central series: {:?}", fp.lower_central));
    lines.push(format!("derived series: {:?}", fp.derived));
    lines.push(format!("center dim: {}", fp.center_dim));
    lines.push(format!("nilpotency class: {}", opt(fp.nilpotency_class)));
    lines.push(format!("solvable: {}", fp.solvable));
    lines.push(format!("derived length: {}", opt(fp.derived_length)));
    lines.push(format!(
        "two-step type: {}",
        fp.two_step_type
            .map_or("none".to_string(), |(p, q)| format!("({p}, {q})"))
    ));
    let json = json!({
        "jacobi": true,
        "field": ctx.field_name(l.field()),
        "minimal_polynomials": irreducibility,
        "fingerprint": {
            "dim": fp.dim,
            "lower_central": fp.lower_central,
            "derived": fp.derived,
            "center_dim": fp.center_dim,
            "commutator_dim": fp.commutator_dim,
            "nilpotency_class": fp.nilpotency_class,
            "solvable": fp.solvable,
            "derived_length": fp.derived_length,
            "two_step_type": fp.two_step_type,
        },
    });
    Ok(Report::new(Outcome::Success, lines, json))
}

/// `id`, an index into `Gal(E, over)`, or generator images such as `i->-i`.
pub fn parse_sigma(ctx: &Context, e: &Field, over: &Field, spec: &str) -> CliResult<Automorphism> {
    let spec = spec.trim();
    let group = galois_group(e, over)?;
    if spec == "id" {
        return Ok(Automorphism::identity(e));
    }
    if let Ok(idx) = spec.parse::<usize>() {
        return group
            .elements
            .get(idx)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("sigma index {idx} out of range 0..{}", group.order())));
    }
    let levels = e.levels();
    let mut images: Vec<FieldElement> = levels[1..].iter().map(FieldElement::generator).collect();
    for part in spec.split(',') {
        let (gen, img) = part
            .split_once("->")
            .ok_or_else(|| CliError::Input(format!("expected 'generator->image', got '{part}'")))?;
        let gen = gen.trim();
        let j = levels[1..]
            .iter()
            .position(|lv| lv.generator_name() == gen)
            .ok_or_else(|| CliError::Input(format!("no generator '{gen}' in {e}")))?;
        images[j] = ctx.element(&levels[j + 1], img)?;
    }
    let sigma = Automorphism::from_images(e, images)?;
    if group.index_of(&sigma).is_none() {
        return Err(CliError::Input(format!("sigma does not fix {over}")));
    }
    Ok(sigma)
}

pub fn conjugate_cmd(ctx: &Context, reference: &str, sigma: &str, over: &str) -> CliResult<Report> {
    let l = ctx.algebra(reference)?;
    let over = ctx.field(over)?;
    let sigma = parse_sigma(ctx, l.field(), &over, sigma)?;
    let (c, _) = conjugate(&l, &sigma)?;
    let mut lines = vec![format!("sigma: {sigma}")];
    lines.extend(algebra_text(&c));
    lines.push(entity_line(ctx, "conjugate", &c));
    Ok(Report::new(
        Outcome::Success,
        lines,
        json!({ "sigma": sigma.to_string(), "algebra": entity_json(ctx, "conjugate", &c) }),
    ))
}

pub fn restrict(ctx: &Context, reference: &str, to: &str) -> CliResult<Report> {
    let l = ctx.algebra(reference)?;
    let f = ctx.field(to)?;
    let (r, book) = restrict_scalars(&l, &f)?;
    let mut lines = vec![format!(
        "dim {} over {} -> dim {} over {}",
        l.dim(),
        l.field(),
        r.dim(),
        f
    )];
    let scalars: Vec<String> = book.scalars.iter().map(ToString::to_string).collect();
    lines.push(format!("scalar basis: {}", scalars.join(", ")));
    lines.extend(algebra_text(&r));
    lines.push(entity_line(ctx, "restriction", &r));
    Ok(Report::new(
        Outcome::Success,
        lines,
        json!({
            "degree": book.degree,
            "scalar_basis": scalars,
            "algebra": entity_json(ctx, "restriction", &r),
        }),
    ))
}

pub fn extend(ctx: &Context, reference: &str, to: &str) -> CliResult<Report> {
    let l = ctx.algebra(reference)?;
    let e = ctx.field(to)?;
    let (x, _) = extend_scalars(&l, &e)?;
    let mut lines = algebra_text(&x);
    lines.push(entity_line(ctx, "extension", &x));
    Ok(Report::new(
        Outcome::Success,
        lines,
        json!({ "algebra": entity_json(ctx, "extension", &x) }),
    ))
}

pub fn verify_sumconjugate_cmd(ctx: &Context, reference: &str, over: &str) -> CliResult<Report> {
    let l = ctx.algebra(reference)?;
    let f = ctx.field(over)?;
    let sc = verify_sumconjugate(&l, &f)?;
    let ok = sc.verified();
    let lines = vec![
        format!("source: dim {} over {}", sc.source.dim(), sc.source.field()),
        format!("target: dim {} over {}", sc.target.dim(), sc.target.field()),
        format!("preserves bracket: {}", sc.check.preserves_bracket),
        format!("bijective: {}", sc.check.bijective),
        format!("verified: {ok}"),
    ];
    let json = json!({
        "source_dim": sc.source.dim(),
        "target_dim": sc.target.dim(),
        "preserves_bracket": sc.check.preserves_bracket,
        "bijective": sc.check.bijective,
        "verified": ok,
    });
    Ok(Report::new(
        if ok { Outcome::Success } else { Outcome::Refuted },
        lines,
        json,
    ))
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::CertifiedIndecomposable(why) => format!("{} ({why:?})", c.label()),
        _ => c.label().to_string(),
    }
}

fn decomposition_lines(dec: &Decomposition, prefix: &str) -> Vec<String> {
    let mut lines = vec![format!("summands: {}", dec.summands.len())];
    for (k, s) in dec.summands.iter().enumerate() {
        lines.push(format!(
            "{prefix}{}: dim {} {}",
            k + 1,
            s.basis.len(),
            certificate_text(&s.certificate)
        ));
        for v in &s.basis {
            lines.push(format!("  {}", vector_text(v)));
        }
    }
    lines
}

fn decomposition_json(dec: &Decomposition) -> Value {
    Value::Array(
        dec.summands
            .iter()
            .map(|s| {
                json!({
                    "dim": s.basis.len(),
                    "certificate": s.certificate.label(),
                    "basis": s.basis.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn decompose(ctx: &Context, reference: &str, over: Option<&str>, trials: Option<usize>) -> CliResult<Report> {
    let mut l = ctx.algebra(reference)?;
    if let Some(over) = over {
        l = restrict_scalars(&l, &ctx.field(over)?)?.0;
    }
    let dec = decompose_indecomposable(&l, trials)?;
    let verified = verify_decomposition(&l, &dec.bases());
    let mut lines = vec![format!("dim {} over {}", l.dim(), l.field())];
    lines.extend(decomposition_lines(&dec, "S"));
    lines.push(format!("verified: {verified}"));
    let outcome = if !verified {
        Outcome::Refuted
    } else if dec.all_certified() {
        Outcome::Success
    } else {
        Outcome::Unknown
    };
    let json = json!({
        "field": ctx.field_name(l.field()),
        "dim": l.dim(),
        "summands": decomposition_json(&dec),
        "verified": verified,
        "all_certified": dec.all_certified(),
    });
    Ok(Report::new(outcome, lines, json))
}

pub fn pfaffian(ctx: &Context, reference: &str) -> CliResult<Report> {
    let l = ctx.algebra(reference)?;
    let pf = pfaffian_form(&l)?;
    let lines = vec![pf.form.to_string()];
    let json = json!({
        "form": pf.form.to_string(),
        "p": pf.basis.p,
        "q": pf.basis.q,
    });
    Ok(Report::new(Outcome::Success, lines, json))
}

pub fn invariant_c_cmd(ctx: &Context, reference: &str) -> CliResult<Report> {
    let l = ctx.algebra(reference)?;
    let c = invariant_c(&l)?;
    let form = pfaffian_form(&l)?.form;
    let json = json!({
        "c": c.to_string(),
        "S": invariant_s(&form)?.to_string(),
        "T": invariant_t(&form)?.to_string(),
        "form": form.to_string(),
    });
    Ok(Report::new(Outcome::Success, vec![c.to_string()], json))
}

pub fn count_forms_cmd(ctx: &Context, reference: &str, over: &str, trials: Option<usize>) -> CliResult<Report> {
    let l = ctx.algebra(reference)?;
    let f = ctx.field(over)?;
    let fc = count_forms(&l, &f, iso_oracle, trials)?;
    let mut lines = vec![fc.count.to_string()];
    let mut witnesses = Vec::new();
    for (n, w) in fc.witnesses.iter().enumerate() {
        let parts: Vec<String> = w
            .sources
            .iter()
            .map(|(s, sigma)| {
                if sigma.is_identity() {
                    format!("S{}", s + 1)
                } else {
                    format!("S{}^({sigma})", s + 1)
                }
            })
            .collect();
        lines.push(format!("witness {}: {}", n + 1, parts.join(" + ")));
        witnesses.push(json!({
            "components": parts,
            "algebra": entity_json(ctx, &format!("witness{}", n + 1), &w.algebra),
        }));
    }
    lines.extend(decomposition_lines(&fc.decomposition, "S"));
    let json = json!({
        "count": fc.count,
        "witnesses": witnesses,
        "orbits": fc.orbits.iter().map(|(m, k)| json!({ "classes": m, "multiplicity": k })).collect::<Vec<_>>(),
        "summands": decomposition_json(&fc.decomposition),
    });
    Ok(Report::new(Outcome::Success, lines, json))
}

pub fn catalog(ctx: &Context, family: &str, field: &str, params: &HashMap<String, String>) -> CliResult<Report> {
    let f = ctx.field(field)?;
    let l = ctx.family(family, &f, params)?;
    let mut lines = algebra_text(&l);
    lines.push(entity_line(ctx, family, &l));
    Ok(Report::new(
        Outcome::Success,
        lines,
        json!({ "algebra": entity_json(ctx, family, &l) }),
    ))
}

pub fn match_cmd(ctx: &Context, a: &str, b: &str, trials: Option<usize>) -> CliResult<Report> {
    let (la, lb) = (ctx.algebra(a)?, ctx.algebra(b)?);
    let da = decompose_indecomposable(&la, trials)?;
    let db = decompose_indecomposable(&lb, trials)?;
    let certified = da.all_certified() && db.all_certified();
    let result = krull_schmidt_match(&da, &db, iso_oracle)?;
    let mut lines = Vec::new();
    lines.extend(decomposition_lines(&da, "A").into_iter().map(|s| format!("first {s}")));
    lines.extend(decomposition_lines(&db, "B").into_iter().map(|s| format!("second {s}")));
    let (outcome, verdict, detail) = match result {
        MatchResult::Matched(pairs) => {
            let desc: Vec<String> = pairs
                .iter()
                .enumerate()
                .map(|(k, &t)| format!("A{} = B{}", k + 1, t + 1))
                .collect();
            (Outcome::Success, "matched", desc.join(", "))
        }
        // Uniqueness of the decomposition needs certified summands.
        MatchResult::Refuted(why) if certified => (Outcome::Refuted, "refuted", why),
        MatchResult::Refuted(why) => (
            Outcome::Unknown,
            "unknown",
            format!("{why}, but some summands are uncertified"),
        ),
        MatchResult::Unknown => (Outcome::Unknown, "unknown", "oracle undecided on some pair".to_string()),
    };
    lines.push(format!("{verdict}: {detail}"));
    let json = json!({
        "verdict": verdict,
        "detail": detail,
        "first": decomposition_json(&da),
        "second": decomposition_json(&db),
    });
    Ok(Report::new(outcome, lines, json))
}
