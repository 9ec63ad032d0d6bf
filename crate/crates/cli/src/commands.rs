use serde_json::{json, Value};
use shamsuddin_core::analysis::{IsotropyWitness, WitnessKind};
use shamsuddin_core::textio::{format_endo, parse_endo, parse_poly};
use shamsuddin_core::{
    commutes, is_locally_finite, is_simple, isotropy_describe_block, isotropy_is_trivial,
    isotropy_witness, mz_classify, preimage_bounded, sample_isotropy_element, Derivation, Error,
    IsotropyDescription, IsotropyElement, ParsedDerivation, PolynomialDerivation, Rational,
    UniPoly,
};

use crate::input;
use crate::output::{Failure, Report};
use crate::Common;

fn tuple<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

fn strings<T: ToString>(items: &[T]) -> Value {
    json!(items.iter().map(T::to_string).collect::<Vec<_>>())
}

fn var_names(vars: &[usize]) -> Vec<String> {
    vars.iter().map(|v| format!("y{}", v + 1)).collect()
}

fn dyn_derivation(d: &ParsedDerivation) -> &dyn PolynomialDerivation {
    match d {
        ParsedDerivation::Shamsuddin(d) => d,
        ParsedDerivation::Triangular(t) => t,
    }
}

pub fn simple(common: &Common) -> Result<Report, Failure> {
    let d = input::shamsuddin(common)?;
    let verdict = is_simple(&d);
    let mut lines = vec![format!("simple: {}", verdict.simple)];
    let mut blocks = Vec::new();
    for (i, (blk, bv)) in d.blocks().iter().zip(&verdict.per_block).enumerate() {
        let names = var_names(blk.vars());
        let head = format!("block {} ({}; a={})", i + 1, names.join(", "), blk.a());
        let witness = match &bv.witness {
            None => {
                lines.push(format!("{head}: simple"));
                Value::Null
            }
            Some(w) => {
                if w.k.iter().all(|k| *k == Rational::from_integer(0.into()))
                    || !w.residual(blk.a(), blk.bs()).is_zero()
                {
                    return Err(Failure::Unverified(format!(
                        "block {} witness does not solve its ODE",
                        i + 1
                    )));
                }
                lines.push(format!(
                    "{head}: not simple; k = {}, z = {}",
                    tuple(&w.k),
                    w.z
                ));
                json!({ "k": strings(&w.k), "z": w.z.to_string() })
            }
        };
        blocks.push(json!({
            "block": i + 1,
            "vars": names,
            "a": blk.a().to_string(),
            "simple": bv.simple,
            "witness": witness,
        }));
    }
    Ok(Report {
        lines,
        json: json!({ "command": "simple", "simple": verdict.simple, "blocks": blocks }),
        verdict: Some(verdict.simple),
    })
}

fn verify_witness(w: &IsotropyWitness, d: &Derivation) -> Result<(), Failure> {
    let ok = !w.endo.is_identity()
        && w.affine.to_endo() == w.endo
        && w.affine.is_automorphism()
        && commutes(&w.endo, d)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Unverified(
            "isotropy witness failed verification".into(),
        ))
    }
}

fn kind_name(kind: &WitnessKind) -> &'static str {
    match kind {
        WitnessKind::Scaling { .. } => "scaling",
        WitnessKind::ZeroCoefficient { .. } => "zero_coefficient",
        WitnessKind::Cancellation { .. } => "cancellation",
    }
}

pub fn isotropy(common: &Common, want_witness: bool) -> Result<Report, Failure> {
    let d = input::shamsuddin(common)?;
    let trivial = isotropy_is_trivial(&d);
    let mut lines = vec![format!("trivial: {trivial}")];
    let mut out = json!({ "command": "isotropy", "trivial": trivial });
    if want_witness && !trivial {
        let w = isotropy_witness(&d)
            .ok_or_else(|| Failure::Unverified("no witness could be constructed".into()))?;
        verify_witness(&w, &d)?;
        let text = format_endo(&w.endo);
        lines.push(text.clone());
        out["witness"] = json!({
            "endo": text,
            "block": w.block + 1,
            "kind": kind_name(&w.kind),
        });
    }
    Ok(Report {
        lines,
        json: out,
        verdict: Some(trivial),
    })
}

fn describe_rows(desc: &IsotropyDescription, lines: &mut Vec<String>, out: &mut Value) {
    match desc {
        IsotropyDescription::ZeroCoefficient {
            antiderivatives, ..
        } => {
            lines.push("shift: c free (x -> x + p(ybar), p arbitrary)".into());
            for (t, h) in antiderivatives.iter().enumerate() {
                lines.push(format!("h{} = {h}", t + 1));
            }
            lines.push("members: x -> x + p(ybar), y_t -> h_t(x + p(ybar)) + q_t(ybar), ybar_j = y_j - h_j(x), q invertible".into());
            out["antiderivatives"] = strings(antiderivatives);
        }
        IsotropyDescription::ConstantCoefficient { .. } => {
            lines.push("shift: c free".into());
            lines.push("members: x -> x + c, y -> C y + g(x), det C != 0, g_t the unique polynomial solution of g' = a g + b_t(x + c) - sum_j C_tj b_j".into());
        }
        IsotropyDescription::NonConstantCoefficient {
            rows, offset_len, ..
        } => {
            lines.push("shift: c = 0 forced".into());
            let r = rows.len();
            let split = |v: &[Rational]| {
                let g = UniPoly::from_coeffs(v[r..r + offset_len].iter().cloned());
                (v[..r].to_vec(), g)
            };
            let mut json_rows = Vec::new();
            for (t, space) in rows.iter().enumerate() {
                let (c, g) = split(&space.particular);
                lines.push(format!(
                    "row y{}: C row = {}, g = {} + span of {} direction(s)",
                    t + 1,
                    tuple(&c),
                    g,
                    space.basis.len()
                ));
                let mut dirs = Vec::new();
                for v in &space.basis {
                    let (c, g) = split(v);
                    lines.push(format!("  direction: C row = {}, g = {}", tuple(&c), g));
                    dirs.push(json!({ "c": strings(&c), "g": g.to_string() }));
                }
                json_rows.push(json!({
                    "var": format!("y{}", t + 1),
                    "particular": { "c": strings(&c), "g": g.to_string() },
                    "directions": dirs,
                }));
            }
            out["rows"] = json!(json_rows);
        }
    }
}

pub fn describe(common: &Common, seed: u64) -> Result<Report, Failure> {
    let d = input::shamsuddin(common)?;
    if d.blocks().len() != 1 {
        return Err(Error::NotSingleBlock {
            blocks: d.blocks().len(),
        }
        .into());
    }
    let blk = &d.blocks()[0];
    let desc = isotropy_describe_block(blk.a(), blk.bs());
    let case = match desc.case() {
        shamsuddin_core::IsotropyCase::ZeroCoefficient => "A_ZERO",
        shamsuddin_core::IsotropyCase::ConstantCoefficient => "A_CONST",
        shamsuddin_core::IsotropyCase::NonConstantCoefficient => "A_DEG_GE_1",
    };
    let mut lines = vec![format!("case: {case}")];
    let mut out =
        json!({ "command": "describe", "case": case, "trivial": desc.is_trivial(), "seed": seed });
    describe_rows(&desc, &mut lines, &mut out);
    match sample_isotropy_element(&desc, seed) {
        Some(element) => {
            let endo = element.to_endo();
            let invertible = match &element {
                IsotropyElement::Affine(a) => a.is_automorphism(),
                IsotropyElement::Polynomial(_) => true,
            };
            if !invertible || !commutes(&endo, &d)? {
                return Err(Failure::Unverified(
                    "sampled member failed verification".into(),
                ));
            }
            let text = format_endo(&endo);
            lines.push(format!("sample (seed {seed}): {text}"));
            out["sample"] = json!(text);
        }
        None => {
            lines.push(format!("sample (seed {seed}): none"));
            out["sample"] = Value::Null;
        }
    }
    Ok(Report {
        lines,
        json: out,
        verdict: None,
    })
}

pub fn locally_finite(common: &Common) -> Result<Report, Failure> {
    let t = input::derivation(common)?.to_triangular();
    let finite = is_locally_finite(&t);
    let offending: Vec<String> = t
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, (a, _))| a.degree().unwrap_or(0) > 0)
        .map(|(j, _)| format!("y{}", j + 1))
        .collect();
    let mut lines = vec![format!("locally-finite: {finite}")];
    if !offending.is_empty() {
        lines.push(format!("non-constant a: {}", offending.join(", ")));
    }
    Ok(Report {
        lines,
        json: json!({ "command": "locally-finite", "locally_finite": finite, "non_constant": offending }),
        verdict: Some(finite),
    })
}

pub fn mz(common: &Common) -> Result<Report, Failure> {
    let d = input::shamsuddin(common)?;
    let v = mz_classify(&d);
    let mut lines = vec![format!("mz: {} ({})", v.status.tag(), v.rule.reason())];
    if let Some(g) = &v.gamma {
        lines.push(format!("gamma: {}", tuple(g)));
    }
    let rule = match v.rule {
        shamsuddin_core::MzRule::AllConstant => "all_constant",
        shamsuddin_core::MzRule::SingleBlockNonConstant => "single_block_non_constant",
        shamsuddin_core::MzRule::NoNaturalDependence => "no_natural_dependence",
        shamsuddin_core::MzRule::OutsideCriteria => "outside_criteria",
    };
    Ok(Report {
        lines,
        json: json!({
            "command": "mz",
            "status": v.status.tag(),
            "rule": rule,
            "reason": v.rule.reason(),
            "gamma": v.gamma.as_ref().map(|g| strings(g)),
        }),
        verdict: None,
    })
}

pub fn preimage(common: &Common, target: &str, max_x: u32, max_y: u32) -> Result<Report, Failure> {
    let parsed = input::derivation(common)?;
    let d = dyn_derivation(&parsed);
    let g = parse_poly(target, d.n_y())?;
    let found = preimage_bounded(d, &g, max_x, max_y)?;
    if let Some(f) = &found {
        if d.apply(f)? != g {
            return Err(Failure::Unverified("preimage failed verification".into()));
        }
    }
    let line = match &found {
        Some(f) => format!("preimage: {f}"),
        None => format!("preimage: none in box (x-degree <= {max_x}, y-degree <= {max_y})"),
    };
    Ok(Report {
        lines: vec![line],
        json: json!({
            "command": "preimage",
            "target": g.to_string(),
            "max_x_deg": max_x,
            "max_y_deg": max_y,
            "preimage": found.as_ref().map(ToString::to_string),
        }),
        verdict: Some(found.is_some()),
    })
}

pub fn apply(common: &Common, poly: &str) -> Result<Report, Failure> {
    let parsed = input::derivation(common)?;
    let d = dyn_derivation(&parsed);
    let f = parse_poly(poly, d.n_y())?;
    let image = d.apply(&f)?;
    Ok(Report {
        lines: vec![format!("D({f}) = {image}")],
        json: json!({ "command": "apply", "input": f.to_string(), "result": image.to_string() }),
        verdict: None,
    })
}

pub fn commute(
    common: &Common,
    endo_path: Option<&str>,
    endo_text: Option<&str>,
) -> Result<Report, Failure> {
    let parsed = input::derivation(common)?;
    let d = dyn_derivation(&parsed);
    let text = match (endo_text, endo_path) {
        (Some(t), _) => t.to_string(),
        (None, Some(p)) => input::read_source(p)?,
        (None, None) => unreachable!("clap requires an endomorphism"),
    };
    let rho = parse_endo(&text, d.n_y())?;
    let ok = commutes(&rho, d)?;
    Ok(Report {
        lines: vec![format!("commutes: {ok}")],
        json: json!({ "command": "commute", "endo": format_endo(&rho), "commutes": ok }),
        verdict: Some(ok),
    })
}
