use serde_json::{json, Value};

use vkinv::algebra::{FiniteGroup, FreeWord};
use vkinv::biquandle::{wada_conditions, ybe_check, Biquandle, Verify, WadaKind, WadaPair};
use vkinv::cocycle::{additive_cocycle, mochizuki_cocycle, state_sum as sum_states};
use vkinv::coloring::{count_colorings, enumerate_colorings};
use vkinv::corpus;
use vkinv::diagram::{parse_braid, parse_gauss, Diagram, Endpoint, GaussCode};
use vkinv::numbering::{checkerboard_obstruction, integer_numbering, min_span, mod2_numbering};
use vkinv::wadagroup::{self, parse_presentation, presentation, simplify, Presentation};
use vkinv::Error;

use crate::report::{join, Report};
use crate::{BiquandleArgs, BiquandleKind, CocycleKind, Failure, GroupKind, GroupSource, Input};

type Outcome = Result<Report, Failure>;

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn resolve(gauss: Option<&str>, braid: Option<&str>, name: Option<&str>, mirror: bool) -> Result<(String, Diagram), Failure> {
    let (label, code): (String, GaussCode) = match (gauss, braid, name) {
        (Some(g), None, None) => (format!("gauss {g}"), parse_gauss(g)?),
        (None, Some(b), None) => (format!("braid {b}"), parse_braid(b)?.close()),
        (None, None, Some(n)) => (n.to_string(), corpus::lookup(n)?.gauss_code()),
        _ => return Err(usage("give exactly one of --gauss, --braid, --name")),
    };
    let (label, code) = if mirror {
        (format!("mirror of {label}"), code.mirrored())
    } else {
        (label, code)
    };
    Ok((label, Diagram::from_gauss(&code)))
}

fn diagram(input: &Input) -> Result<(String, Diagram), Failure> {
    let s = &input.source;
    resolve(s.gauss.as_deref(), s.braid.as_deref(), s.name.as_deref(), input.mirror)
}

fn kind(k: GroupKind) -> WadaKind {
    match k {
        GroupKind::W1 => WadaKind::W1,
        GroupKind::W2 => WadaKind::W2,
        GroupKind::Core => WadaKind::Core,
    }
}

/// The requested pair map together with the group it is evaluated in.
fn pair_and_group(args: &BiquandleArgs) -> Result<(WadaPair, FiniteGroup), Failure> {
    let group = |args: &BiquandleArgs| -> Result<FiniteGroup, Failure> {
        let spec = args.group.as_deref().ok_or_else(|| usage("--group is required for this biquandle"))?;
        Ok(FiniteGroup::parse_spec(spec)?)
    };
    match args.biquandle {
        BiquandleKind::Abelian => {
            if args.group.is_some() {
                return Err(usage("the abelian biquandle takes --n, not --group"));
            }
            let n = args.n.ok_or_else(|| usage("--n is required for the abelian biquandle"))?;
            Ok((WadaKind::W1.pair(), FiniteGroup::cyclic(n)?))
        }
        BiquandleKind::Custom => {
            let (u, v) = match (&args.u, &args.v) {
                (Some(u), Some(v)) => (FreeWord::parse(u)?, FreeWord::parse(v)?),
                _ => return Err(usage("a custom biquandle needs both --u and --v")),
            };
            Ok((WadaPair::custom(u, v), group(args)?))
        }
        k => {
            let k = match k {
                BiquandleKind::W1 => WadaKind::W1,
                BiquandleKind::W2 => WadaKind::W2,
                _ => WadaKind::Core,
            };
            Ok((k.pair(), group(args)?))
        }
    }
}

fn biquandle(args: &BiquandleArgs) -> Result<Biquandle, Failure> {
    if args.biquandle == BiquandleKind::Abelian {
        let n = args.n.ok_or_else(|| usage("--n is required for the abelian biquandle"))?;
        return Ok(Biquandle::abelian_wada(n)?);
    }
    let (pair, group) = pair_and_group(args)?;
    Ok(Biquandle::from_wada(&pair, &group)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "fails"
    }
}

pub fn axioms(args: &BiquandleArgs) -> Outcome {
    let (pair, group) = pair_and_group(args)?;
    let wada = wada_conditions(&pair, &group);
    let wada_json = json!({
        "t": wada.t,
        "m": wada.m,
        "b": wada.b,
        "witness": wada.witness.map(|(c, w)| json!({"condition": format!("{c:?}"), "triple": w})),
    });
    let built = Biquandle::from_wada_with(&pair, &group, Verify::Full);
    let (birack, violation, type_one, ybe) = match &built {
        Ok(b) => (true, Value::Null, b.is_biquandle(), Some(ybe_check(b).is_ok())),
        Err(Error::AxiomViolation { axiom, witness }) => (
            false,
            json!({"axiom": axiom.to_string(), "witness": witness}),
            false,
            None,
        ),
        Err(_) => return Err(built.unwrap_err().into()),
    };
    let name = pair.name();
    let mut text = format!("{name} on {} (order {})\n", group.name(), group.order());
    text += &format!("birack: {}\n", yes(birack));
    if let Value::Object(v) = &violation {
        text += &format!("  violated: {} at {}\n", v["axiom"].as_str().unwrap_or(""), v["witness"]);
    }
    text += &format!("yang-baxter: {}\n", ybe.map_or("not checked", yes));
    text += &format!("type I: {}\n", yes(type_one));
    text += &format!("wada T: {}  M: {}  B: {}\n", yes(wada.t), yes(wada.m), yes(wada.b));
    let json = json!({
        "pair": name,
        "u": pair.u.to_string(),
        "v": pair.v.to_string(),
        "group": group.name(),
        "order": group.order(),
        "birack": birack,
        "violation": violation,
        "yang_baxter": ybe,
        "biquandle": type_one,
        "wada": wada_json,
    });
    let mut report = Report::new(json, text);
    report.failed = !(birack && type_one);
    Ok(report)
}

pub fn color_count(input: &Input, args: &BiquandleArgs, limit: Option<usize>) -> Outcome {
    let (label, d) = diagram(input)?;
    let b = biquandle(args)?;
    let count = count_colorings(&d, &b);
    let mut text = format!("{count}\n");
    let listed = limit.map(|k| enumerate_colorings(&d, &b, Some(k)));
    if let Some(cs) = &listed {
        for c in cs {
            text += &format!("{}\n", join(c.colors()));
        }
    }
    let json = json!({
        "diagram": label,
        "biquandle": b.name(),
        "order": b.order(),
        "count": count,
        "colorings": listed.map(|cs| cs.iter().map(|c| c.colors().to_vec()).collect::<Vec<_>>()),
    });
    Ok(Report::new(json, text))
}

pub fn state_sum(input: &Input, args: &BiquandleArgs, cocycle: CocycleKind) -> Outcome {
    if args.biquandle != BiquandleKind::Abelian {
        return Err(usage("state sums are computed over the abelian biquandle (--biquandle abelian --n <n>)"));
    }
    let (label, d) = diagram(input)?;
    let b = biquandle(args)?;
    let n = b.order() as u64;
    let f = match cocycle {
        CocycleKind::Additive => additive_cocycle(n)?,
        CocycleKind::Mochizuki => mochizuki_cocycle(n)?,
    };
    let s = sum_states(&d, &b, &f)?;
    let terms: Vec<Value> = s.phi.terms.iter().map(|(k, c)| json!([k, c])).collect();
    let json = json!({
        "diagram": label,
        "biquandle": b.name(),
        "cocycle": format!("{cocycle:?}").to_lowercase(),
        "modulus": n,
        "phi": s.phi.to_string(),
        "terms": terms,
        "colorings": s.phi.augmentation(),
        "invariant": s.invariant,
    });
    let report = Report::new(json, s.phi.to_string());
    Ok(if s.invariant {
        report
    } else {
        report.warn("the cochain is not a type I 2-cocycle here; the sum is not an invariant")
    })
}

fn presentation_json(p: &Presentation) -> Value {
    json!({
        "generators": p.generators(),
        "relators": p.relators().len(),
        "text": p.to_string(),
    })
}

pub fn wada_group(input: &Input, k: GroupKind, simplified: bool) -> Outcome {
    let (label, d) = diagram(input)?;
    let mut p = presentation(&d, kind(k));
    if simplified {
        p = simplify(&p);
    }
    let json = json!({
        "diagram": label,
        "kind": kind(k).to_string(),
        "simplified": simplified,
        "presentation": presentation_json(&p),
    });
    Ok(Report::new(json, p.to_string()))
}

fn group_of(source: &GroupSource) -> Result<(String, Presentation), Failure> {
    if let Some(text) = &source.presentation {
        return Ok((text.clone(), parse_presentation(text)?));
    }
    let k = source
        .biquandle
        .ok_or_else(|| usage("give --presentation or --biquandle with a diagram"))?;
    let (label, d) = resolve(
        source.gauss.as_deref(),
        source.braid.as_deref(),
        source.name.as_deref(),
        source.mirror,
    )?;
    Ok((format!("{} of {label}", kind(k)), presentation(&d, kind(k))))
}

pub fn abelianization(source: &GroupSource) -> Outcome {
    let (label, p) = group_of(source)?;
    let s = wadagroup::abelianization(&p);
    let torsion: Vec<String> = s.torsion().iter().map(|d| d.to_string()).collect();
    let json = json!({
        "group": label,
        "free_rank": s.free_rank,
        "torsion": torsion,
        "text": s.to_string(),
    });
    Ok(Report::new(json, s.to_string()))
}

pub fn hom_count(source: &GroupSource, spec: &str) -> Outcome {
    let (label, p) = group_of(source)?;
    let g = FiniteGroup::parse_spec(spec)?;
    let count = wadagroup::hom_count(&p, &g);
    let json = json!({
        "group": label,
        "target": g.name(),
        "order": g.order(),
        "count": count,
    });
    Ok(Report::new(json, count.to_string()))
}

fn endpoint(d: &Diagram, e: Endpoint) -> String {
    match e {
        Endpoint::Slot { crossing, .. } => format!("c{}", d.crossings()[crossing].label),
        Endpoint::Free { component } => format!("loop{component}"),
    }
}

fn numbering_lines<T: ToString>(d: &Diagram, values: &[T]) -> String {
    d.edges()
        .iter()
        .zip(values)
        .enumerate()
        .map(|(i, (e, v))| {
            format!(
                "  e{i} ({} -> {}): {}\n",
                endpoint(d, e.tail),
                endpoint(d, e.head),
                v.to_string()
            )
        })
        .collect()
}

pub fn alex_numbering(input: &Input) -> Outcome {
    let (label, d) = diagram(input)?;
    let m2 = mod2_numbering(&d);
    let int = integer_numbering(&d);
    let mut text = String::new();
    match &m2 {
        Some(n) => text += &format!("mod-2 numbering:\n{}", numbering_lines(&d, n.values())),
        None => text += "mod-2 numbering: none on this diagram\n",
    }
    match &int {
        Some(n) => text += &format!("integer numbering:\n{}", numbering_lines(&d, n.values())),
        None => text += "integer numbering: none on this diagram\n",
    }
    let edges: Vec<Value> = d
        .edges()
        .iter()
        .map(|e| json!({"from": endpoint(&d, e.tail), "to": endpoint(&d, e.head), "component": e.component}))
        .collect();
    let json = json!({
        "diagram": label,
        "edges": edges,
        "mod2": m2.map(|n| n.values().to_vec()),
        "integer": int.map(|n| n.values().to_vec()),
    });
    Ok(Report::new(json, text))
}

pub fn span(input: &Input, bound: u64, exact: bool) -> Outcome {
    let (label, d) = diagram(input)?;
    let mut r = min_span(&d, bound);
    if exact {
        while let Some(req) = r.required_bound.filter(|&req| req > r.bound) {
            r = min_span(&d, req);
        }
    }
    let mut text = format!("lattice rank: {}\n", r.basis.len());
    match (r.span, &r.witness) {
        (Some(s), Some(w)) => {
            text += &format!("span: {s}\nwitness: {}\n", join(w));
        }
        _ => text += "span: none (no nonzero integer coloring in range)\n",
    }
    text += &format!("bound: {}", r.bound);
    if let Some(req) = r.required_bound {
        text += &format!(" (required {req})");
    }
    text += &format!("\nexact: {}\n", if r.exact { "yes" } else { "no" });
    let json = json!({"diagram": label, "report": r});
    Ok(Report::new(json, text))
}

pub fn obstruct(input: &Input, n: u64) -> Outcome {
    let (label, d) = diagram(input)?;
    let numbered = mod2_numbering(&d).is_some();
    let r = checkerboard_obstruction(&d, n)?;
    let ring = if n == 0 { "Z".to_string() } else { format!("Z{n}") };
    let mut text = if numbered {
        "mod-2 numbering: exists on this diagram\n".to_string()
    } else {
        "mod-2 numbering: none on this diagram\n".to_string()
    };
    match (&r.witness, r.weight) {
        (Some(w), Some(x)) => {
            text += &format!("nonzero weight over {ring}: {x} at coloring {}\n", join(w));
        }
        _ => text += &format!("every coloring over {ring} has weight 0\n"),
    }
    let json = json!({
        "diagram": label,
        "mod2_numbering": numbered,
        "report": r,
    });
    Ok(Report::new(json, text))
}

pub fn corpus(entry: Option<&str>, pairs: bool) -> Outcome {
    let c = corpus::builtin();
    if pairs {
        let list: Vec<Value> = c.equivalences().iter().map(|(a, b)| json!([a, b])).collect();
        let text: String = c.equivalences().iter().map(|(a, b)| format!("{a} ~ {b}\n")).collect();
        return Ok(Report::new(json!({"equivalences": list}), text));
    }
    match entry {
        Some(name) => {
            let e = c.get(name)?;
            let s = e.summary();
            let text = format!(
                "{}\nsource: {}\ngauss: {}\ncrossings: {}\ncomponents: {}\n{}\n",
                s.name, e.source, s.gauss, s.crossings, s.components, s.note
            );
            let d = e.diagram();
            let json = json!({"entry": s, "diagram": d.to_json()});
            Ok(Report::new(json, text))
        }
        None => {
            let list: Vec<_> = c.entries().iter().map(|e| e.summary()).collect();
            let text: String = list
                .iter()
                .map(|s| format!("{:<16} {:>2} crossings  {}\n", s.name, s.crossings, s.gauss))
                .collect();
            Ok(Report::new(json!({"entries": list}), text))
        }
    }
}
