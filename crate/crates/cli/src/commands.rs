use std::error::Error as StdError;
use std::io::Read;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::json;

use orthomat::crypto::{
    rgp_to_signature, signature_to_wick, verify_roundtrips, wick_to_rgp, wick_to_signature,
    Presentation,
};
use orthomat::enveloping::check_enveloping_relations;
use orthomat::functions::{check_rgp, check_wick};
use orthomat::json::{RawFunction, RawMatrix, RawMatroid, RawSignature};
use orthomat::matroid::check_strong_exchange;
use orthomat::oracle::{enumerate_orthogonal_matroids, random_skew_matrix, EntryDistribution};
use orthomat::realization::{check_cayley, wick_coordinates, AugmentedMatrix, Component};
use orthomat::tract::{PrimeField, RationalField, Sign, SignHyperfield};
use orthomat::{
    with_tract, Error, Field, OrthogonalMatroid, Signature, Strength, Subset, Tract, TractKind,
    Verdict, WickFunction,
};

use crate::report::Report;
use crate::{Cli, Command, EmitArg, ObjectArg, OracleCommand, PresentationArg};

pub type Res<T> = std::result::Result<T, Box<dyn StdError + Send + Sync>>;

pub fn run(cli: Cli) -> Res<Report> {
    let g = cli.global;
    let strength = Strength::from(g.strength);
    match cli.command {
        Command::Verify { kind, input } => verify(kind, &read_input(&input)?, strength),
        Command::Convert { from, to, input } => convert(from, to, &read_input(&input)?, strength),
        Command::Realize {
            input,
            emit,
            component,
            check,
        } => realize(&parse(&read_input(&input)?)?, emit, component.into(), check),
        Command::Circuits {
            input,
            antisymmetric,
        } => circuits(&parse(&read_input(&input)?)?, antisymmetric),
        Command::Roundtrip { kind, input } => roundtrip(kind, &read_input(&input)?, strength),
        Command::EnvelopeCheck { input } => envelope_check(&parse(&read_input(&input)?)?),
        Command::Oracle {
            command: OracleCommand::Enumerate { n },
        } => enumerate(n),
        Command::Oracle {
            command: OracleCommand::RandomMatrix { n, density },
        } => random_matrix(n, density, g.seed),
        Command::Search { n, trials } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(g.jobs)
                .build()?;
            pool.install(|| search(n, trials, g.seed))
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Res<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| format!("cannot read {}: {e}", p.display()).into()),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Res<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e).into())
}

fn strength_name(s: Strength) -> &'static str {
    match s {
        Strength::Strong => "strong",
        Strength::Weak => "weak",
    }
}

fn verdict_report(object: &str, strength: Strength, verdict: Verdict) -> Report {
    let mut json =
        json!({ "object": object, "strength": strength_name(strength), "passed": verdict.is_ok() });
    match verdict {
        Ok(()) => Report::verdict(true, json, String::new()),
        Err(v) => {
            json["violation"] = json!(v.label());
            json["witness"] = serde_json::to_value(&v).expect("serializable");
            Report::verdict(false, json, v.to_string())
        }
    }
}

/// The matroid whose circuits are the signature's supports.
fn signature_matroid<T: Tract>(sig: &Signature<T>) -> orthomat::Result<OrthogonalMatroid> {
    OrthogonalMatroid::from_circuits(sig.n(), &sig.supports())
}

fn verify(kind: ObjectArg, text: &str, strength: Strength) -> Res<Report> {
    match kind {
        ObjectArg::Matroid => {
            let raw: RawMatroid = parse(text)?;
            let verdict = check_strong_exchange(raw.n, &raw.bases()?)?;
            Ok(verdict_report("matroid", strength, verdict))
        }
        ObjectArg::Wick => {
            let raw: RawFunction = parse(text)?;
            with_tract!(raw.tract_kind()?, |t| {
                let psi = raw.to_wick(t)?;
                Ok(verdict_report("wick", strength, check_wick(&psi, strength)))
            })
        }
        ObjectArg::Rgp => {
            let raw: RawFunction = parse(text)?;
            with_tract!(raw.tract_kind()?, |t| {
                let phi = raw.to_rgp(t)?;
                Ok(verdict_report("rgp", strength, check_rgp(&phi, strength)))
            })
        }
        ObjectArg::Signature => {
            let raw: RawSignature = parse(text)?;
            with_tract!(raw.tract_kind()?, |t| verify_signature(
                &raw.to_signature(t)?,
                strength
            ))
        }
    }
}

fn verify_signature<T: Tract>(sig: &Signature<T>, strength: Strength) -> Res<Report> {
    let m = match signature_matroid(sig) {
        Ok(m) => m,
        Err(Error::NotAMatroid) => {
            let supports: Vec<Vec<String>> =
                sig.supports().iter().map(|s| s.to_strings()).collect();
            let json = json!({
                "object": "signature",
                "strength": strength_name(strength),
                "passed": false,
                "violation": "supports",
                "witness": { "check": "supports", "supports": supports },
            });
            return Ok(Report::verdict(
                false,
                json,
                "supports: not the circuits of an orthogonal matroid".into(),
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let verdict = match strength {
        Strength::Strong => sig.check_orthogonal(&m)?,
        Strength::Weak => sig.check_weak_circuit_set(&m)?,
    };
    Ok(verdict_report("signature", strength, verdict))
}

fn read_presentation<T: Tract>(
    kind: PresentationArg,
    text: &str,
    tract: T,
) -> Res<Presentation<T>> {
    Ok(match kind {
        PresentationArg::Wick => Presentation::Wick(parse::<RawFunction>(text)?.to_wick(tract)?),
        PresentationArg::Rgp => Presentation::Rgp(parse::<RawFunction>(text)?.to_rgp(tract)?),
        PresentationArg::Signature => {
            Presentation::Signature(parse::<RawSignature>(text)?.to_signature(tract)?)
        }
    })
}

fn tract_of(kind: PresentationArg, text: &str) -> Res<TractKind> {
    Ok(match kind {
        PresentationArg::Signature => parse::<RawSignature>(text)?.tract_kind()?,
        _ => parse::<RawFunction>(text)?.tract_kind()?,
    })
}

fn to_wick<T: Tract>(
    obj: Presentation<T>,
    strength: Strength,
) -> orthomat::Result<WickFunction<T>> {
    match obj {
        Presentation::Wick(psi) => Ok(psi),
        Presentation::Rgp(phi) => to_wick(
            Presentation::Signature(rgp_to_signature(&phi, strength)?),
            strength,
        ),
        Presentation::Signature(sig) => {
            signature_to_wick(&sig, &signature_matroid(&sig)?, strength)
        }
    }
}

fn function_report(raw: RawFunction) -> Res<Report> {
    let text = raw
        .values
        .iter()
        .map(|(k, v)| format!("{k} -> {v}\n"))
        .collect();
    Ok(Report::data(serde_json::to_value(raw)?, text))
}

fn signature_report<T: Tract>(sig: &Signature<T>) -> Res<Report> {
    let text = sig
        .rays()
        .iter()
        .map(|r| format!("{}\n", r.format(sig.tract())))
        .collect();
    Ok(Report::data(
        serde_json::to_value(RawSignature::from_signature(sig))?,
        text,
    ))
}

fn convert_in<T: Tract>(
    obj: Presentation<T>,
    to: PresentationArg,
    strength: Strength,
) -> Res<Report> {
    match (obj, to) {
        (Presentation::Rgp(phi), PresentationArg::Rgp) => {
            check_rgp(&phi, strength).map_err(|v| Error::InvalidRgp(v.to_string()))?;
            function_report(RawFunction::from_rgp(&phi))
        }
        (Presentation::Rgp(phi), PresentationArg::Signature) => {
            signature_report(&rgp_to_signature(&phi, strength)?)
        }
        (Presentation::Signature(sig), PresentationArg::Signature) => {
            let m = signature_matroid(&sig)?;
            signature_to_wick(&sig, &m, strength)?;
            signature_report(&sig)
        }
        (obj, to) => {
            let psi = to_wick(obj, strength)?;
            match to {
                PresentationArg::Wick => {
                    check_wick(&psi, strength).map_err(|v| Error::InvalidWick(v.to_string()))?;
                    function_report(RawFunction::from_wick(&psi))
                }
                PresentationArg::Rgp => {
                    function_report(RawFunction::from_rgp(&wick_to_rgp(&psi, strength)?))
                }
                PresentationArg::Signature => signature_report(&wick_to_signature(&psi, strength)?),
            }
        }
    }
}

fn convert(
    from: PresentationArg,
    to: PresentationArg,
    text: &str,
    strength: Strength,
) -> Res<Report> {
    with_tract!(tract_of(from, text)?, |t| convert_in(
        read_presentation(from, text, t)?,
        to,
        strength
    ))
}

fn realize(raw: &RawMatrix, emit: EmitArg, component: Component, check: bool) -> Res<Report> {
    match raw.tract_kind()? {
        TractKind::Rational => realize_in(raw, RationalField, emit, component, check),
        TractKind::Prime(p) => realize_in(raw, PrimeField::new(p)?, emit, component, check),
        other => Err(format!("realization needs a field, got {other}").into()),
    }
}

fn realize_in<F: Field>(
    raw: &RawMatrix,
    field: F,
    emit: EmitArg,
    component: Component,
    check: bool,
) -> Res<Report> {
    let a = raw.to_skew(field)?;
    let aug = match component {
        Component::Plus => AugmentedMatrix::from_skew(&a),
        Component::Minus => AugmentedMatrix::minus_from_skew(&a),
    };
    let phi = aug.restricted_plucker();
    let wick = || -> orthomat::Result<WickFunction<F>> {
        match component {
            Component::Plus => Ok(wick_coordinates(&a)),
            Component::Minus => to_wick(Presentation::Rgp(phi.clone()), Strength::Strong),
        }
    };
    let mut out = match emit {
        EmitArg::Wick => function_report(RawFunction::from_wick(&wick()?))?,
        EmitArg::Rgp => function_report(RawFunction::from_rgp(&phi))?,
        EmitArg::Signature => signature_report(&rgp_to_signature(&phi, Strength::Strong)?)?,
        EmitArg::Matroid => {
            let m = wick()?.support_matroid()?;
            let text = m.bases().iter().map(|b| format!("{b}\n")).collect();
            Report::data(
                serde_json::to_value(RawMatroid::from_bases(m.n(), m.bases()))?,
                text,
            )
        }
    };
    if check {
        let cayley = check_cayley(&a);
        let linear = aug.check_linear_relations(component)?;
        let passed = cayley.is_ok() && linear.is_ok();
        let show = |v: &Verdict| match v {
            Ok(()) => json!({ "passed": true }),
            Err(w) => json!({ "passed": false, "witness": w }),
        };
        let mut text = out.text;
        for (name, v) in [("cayley", &cayley), ("linear relations", &linear)] {
            match v {
                Ok(()) => text.push_str(&format!("{name}: ok\n")),
                Err(w) => text.push_str(&format!("{name}: {w}\n")),
            }
        }
        let json = json!({ "passed": passed, "emit": out.json, "cayley": show(&cayley), "linear_relations": show(&linear) });
        out = Report::verdict(passed, json, text);
    }
    Ok(out)
}

fn circuits(raw: &RawMatroid, antisymmetric: bool) -> Res<Report> {
    let m = raw.to_matroid()?;
    let cs: Vec<Subset> = if antisymmetric {
        m.to_even_antisymmetric().circuits()
    } else {
        m.circuits()
    };
    let text = cs.iter().map(|c| format!("{c}\n")).collect();
    let json =
        json!({ "n": m.n(), "circuits": cs.iter().map(|c| c.to_strings()).collect::<Vec<_>>() });
    Ok(Report::data(json, text))
}

fn roundtrip(kind: PresentationArg, text: &str, strength: Strength) -> Res<Report> {
    with_tract!(tract_of(kind, text)?, |t| {
        let report = verify_roundtrips(&read_presentation(kind, text, t)?, strength);
        let lines = report
            .steps
            .iter()
            .map(|s| match &s.error {
                Some(e) => format!("{}: error: {e}\n", s.identity),
                None => format!(
                    "{}: {}\n",
                    s.identity,
                    if s.passed { "ok" } else { "FAILED" }
                ),
            })
            .collect();
        Ok(Report::verdict(
            report.passed,
            serde_json::to_value(&report)?,
            lines,
        ))
    })
}

fn envelope_check(raw: &RawFunction) -> Res<Report> {
    with_tract!(raw.tract_kind()?, |t| {
        let report = check_enveloping_relations(&raw.to_rgp(t)?)?;
        let mut text: String = (0..6)
            .map(|k| format!("case {}: {} relations\n", k + 1, report.case_counts[k]))
            .collect();
        text.push_str(&format!(
            "unclassified: {}\nnot applicable: {}\n",
            report.unclassified, report.not_applicable
        ));
        if let Some(v) = &report.first_failure {
            text.push_str(&format!("first failure: {v}\n"));
        }
        Ok(Report::verdict(
            report.passed,
            serde_json::to_value(&report)?,
            text,
        ))
    })
}

fn enumerate(n: usize) -> Res<Report> {
    let ms = enumerate_orthogonal_matroids(n)?;
    let raws: Vec<RawMatroid> = ms
        .iter()
        .map(|m| RawMatroid::from_bases(n, m.bases()))
        .collect();
    let text: String = raws
        .iter()
        .map(|r| {
            format!(
                "{}\n",
                r.bases
                    .iter()
                    .map(|b| b.join(""))
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        })
        .collect();
    Ok(Report::data(
        json!({ "n": n, "count": ms.len(), "matroids": raws }),
        format!("{} matroids\n{text}", ms.len()),
    ))
}

fn random_matrix(n: usize, density: f64, seed: u64) -> Res<Report> {
    if !(0.0..=1.0).contains(&density) {
        return Err(format!("density {density} outside [0, 1]").into());
    }
    orthomat::groundset::check_n(n)?;
    let a = random_skew_matrix(n, seed, EntryDistribution::sparse(density));
    let raw = RawMatrix::from_skew(&a);
    let text = raw
        .upper
        .iter()
        .map(|r| format!("{}\n", r.join(" ")))
        .collect();
    Ok(Report::data(serde_json::to_value(raw)?, text))
}

/// One search trial: random signs on the bases of a random matroid.
fn trial(ms: &[OrthogonalMatroid], seed: u64, k: u64) -> Res<(bool, Option<RawFunction>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let m = &ms[rng.random_range(0..ms.len())];
    let entries = m.bases().iter().map(|&b| {
        (
            b,
            if rng.random_bool(0.5) {
                Sign::Pos
            } else {
                Sign::Neg
            },
        )
    });
    let psi = WickFunction::new(m.n(), SignHyperfield, entries.collect::<Vec<_>>())?;
    let weak = check_wick(&psi, Strength::Weak).is_ok();
    let finding =
        (weak && check_wick(&psi, Strength::Strong).is_err()).then(|| RawFunction::from_wick(&psi));
    Ok((weak, finding))
}

fn search(n: usize, trials: u64, seed: u64) -> Res<Report> {
    let ms = enumerate_orthogonal_matroids(n)?;
    let results: Vec<(bool, Option<RawFunction>)> = (0..trials)
        .into_par_iter()
        .map(|k| trial(&ms, seed, k))
        .collect::<Res<_>>()?;
    let weak_passes = results.iter().filter(|r| r.0).count();
    let findings: Vec<RawFunction> = results.into_iter().filter_map(|r| r.1).collect();
    let note = "experimental: random search only; finding nothing is not evidence of absence";
    let json = json!({
        "experimental": true,
        "note": note,
        "tract": "Sign",
        "n": n,
        "seed": seed,
        "trials": trials,
        "weak_passes": weak_passes,
        "findings": findings,
    });
    let text = format!(
        "{note}\n{trials} trials, {weak_passes} weak passes, {} weak-not-strong findings\n",
        findings.len()
    );
    Ok(Report::data(json, text))
}
