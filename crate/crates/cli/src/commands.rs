use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use qtopos::dasein::{daseinise_operator, daseinised_atoms, gelfand_values, represent_proposition};
use qtopos::json::{parse_operator, parse_operator_pools, parse_projection, parse_ray_family, parse_state, MatrixJson, PosetJson};
use qtopos::ks::find_global_sections;
use qtopos::pl::{parse, Sentence};
use qtopos::quantity::{quantity_arrow, ArrowMode};
use qtopos::truth::{classify_truth, truth_object, truth_value};
use qtopos::{BorelSet, ClopenSubobject, ContextPoset, Error, Mode, PosetOptions, Sieve, C64};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::table::{list, render};
use crate::{ArrowModeArg, Cli, Command, ContextSource, DaseinInput, Failure, Format, PlCommand, Within};

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise") + "\n"
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Table => "table",
    };
    Failure::Usage(format!("--format {name} is not available for `{command}`"))
}

fn load_poset(cli: &Cli, source: &ContextSource) -> Result<ContextPoset, Failure> {
    let contexts = match (&source.rays, &source.pools) {
        (Some(path), _) => parse_ray_family(&read(path)?, cli.eps).within("context-category")?,
        (None, Some(path)) => parse_operator_pools(&read(path)?, cli.eps).within("context-category")?,
        (None, None) => return Err(Failure::Usage("one of --rays or --pools is required".into())),
    };
    let options = PosetOptions { include_trivial: cli.include_trivial, close_under_intersection: !cli.no_closure };
    ContextPoset::build(contexts, options, cli.eps).within("context-category")
}

fn parse_delta(text: &str) -> Result<BorelSet, Failure> {
    BorelSet::parse(text).map_err(|e| Failure::Usage(format!("--delta: {e}")))
}

fn subobject_json(s: &ClopenSubobject, poset: &ContextPoset) -> Value {
    json!(s.to_json_map(poset))
}

fn subobject_table(columns: &[(&str, &ClopenSubobject)], poset: &ContextPoset) -> String {
    let mut headers = vec!["context", "atoms"];
    headers.extend(columns.iter().map(|(name, _)| *name));
    let rows: Vec<Vec<String>> = (0..poset.len())
        .map(|v| {
            let mut row = vec![poset.key(v).to_string(), poset.context(v).len().to_string()];
            row.extend(columns.iter().map(|(_, s)| list(s.at(v).iter())));
            row
        })
        .collect();
    render(&headers, &rows)
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Contexts { source } => contexts(cli, &load_poset(cli, source)?),
        Command::Dasein { source, input } => dasein(cli, &load_poset(cli, source)?, input),
        Command::Proposition { source, op, delta } => {
            let poset = load_poset(cli, source)?;
            let a = parse_operator(&read(op)?, cli.eps).within("hermitian-core")?;
            let delta = parse_delta(delta)?;
            let s = represent_proposition(&a, &delta, &poset).within("daseinisation")?;
            match cli.format {
                Format::Json => Ok(pretty(&json!({ "delta": delta.to_string(), "subobject": subobject_json(&s, &poset) }))),
                Format::Dot => Ok(poset.to_dot_with_selection(s.components())),
                Format::Table => Ok(subobject_table(&[("selected", &s)], &poset)),
            }
        }
        Command::Truth { source, state, op, delta, normalize } => {
            let poset = load_poset(cli, source)?;
            let text = if Path::new(state).is_file() { read(Path::new(state))? } else { state.clone() };
            let mut psi = parse_state(&text).within("topos-logic")?;
            if *normalize {
                let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm == 0.0 || !norm.is_finite() {
                    return Err(Failure::Domain { module: "topos-logic", error: Error::InvalidInput("cannot normalise a zero state".into()) });
                }
                psi = psi.iter().map(|z| z / norm).collect::<Vec<C64>>();
            }
            let a = parse_operator(&read(op)?, cli.eps).within("hermitian-core")?;
            let s = represent_proposition(&a, &parse_delta(delta)?, &poset).within("daseinisation")?;
            let t = truth_object(&psi, &poset).within("topos-logic")?;
            let report = classify_truth(&truth_value(&s, &t, &poset).within("topos-logic")?, &poset);
            match cli.format {
                Format::Json => Ok(pretty(&serde_json::to_value(&report).expect("report serialises"))),
                Format::Table => {
                    let rows: Vec<Vec<String>> =
                        report.sieves.iter().map(|(k, members)| vec![k.clone(), list(members)]).collect();
                    Ok(format!("classification: {}\n\n{}", report.classification.as_str(), render(&["context", "sieve"], &rows)))
                }
                Format::Dot => Err(unsupported(cli.format, "truth")),
            }
        }
        Command::Arrow { source, op, mode } => {
            let poset = load_poset(cli, source)?;
            let a = parse_operator(&read(op)?, cli.eps).within("hermitian-core")?;
            let mode = match mode {
                ArrowModeArg::Outer => ArrowMode::Outer,
                ArrowModeArg::Inner => ArrowMode::Inner,
                ArrowModeArg::Paired => ArrowMode::Paired,
            };
            let arrow = quantity_arrow(&a, &poset, mode).within("quantity-value")?;
            match cli.format {
                Format::Json => Ok(pretty(&arrow.to_json(&poset))),
                Format::Table => {
                    let mut rows = Vec::new();
                    for v in 0..poset.len() {
                        for atom in 0..poset.context(v).len() {
                            for sub in poset.down_set(v) {
                                let value = |m| arrow.function(v, atom, m).and_then(|f| f.value(sub)).map_or("-".to_string(), |x| x.to_string());
                                rows.push(vec![
                                    poset.key(v).to_string(),
                                    atom.to_string(),
                                    poset.key(sub).to_string(),
                                    value(Mode::Inner),
                                    value(Mode::Outer),
                                ]);
                            }
                        }
                    }
                    Ok(render(&["context", "atom", "at", "inner", "outer"], &rows))
                }
                Format::Dot => Err(unsupported(cli.format, "arrow")),
            }
        }
        Command::Ks { source, limit } => {
            let poset = load_poset(cli, source)?;
            let report = find_global_sections(&poset, *limit);
            match cli.format {
                Format::Json => Ok(pretty(&report.to_json(&poset))),
                Format::Table => {
                    let mut out = format!(
                        "sections: {}\nexhausted: {}\nnodes: {}\n",
                        report.sections.len(),
                        report.exhausted,
                        report.nodes
                    );
                    if let Some(o) = &report.obstruction {
                        out += &format!("obstruction: {} against {}\n", o.context, o.conflict);
                    }
                    if let Some(w) = &report.warning {
                        out += &format!("warning: {w}\n");
                    }
                    if !report.sections.is_empty() {
                        let mut headers = vec!["section"];
                        let keys: Vec<String> = (0..poset.len()).map(|v| poset.key(v).to_string()).collect();
                        headers.extend(keys.iter().map(String::as_str));
                        let rows: Vec<Vec<String>> = report
                            .sections
                            .iter()
                            .enumerate()
                            .map(|(i, s)| std::iter::once(i.to_string()).chain(s.0.iter().map(|a| a.to_string())).collect())
                            .collect();
                        out += "\n";
                        out += &render(&headers, &rows);
                    }
                    Ok(out)
                }
                Format::Dot => Err(unsupported(cli.format, "ks")),
            }
        }
        Command::Pl { command: PlCommand::Eval { sentence, valuation, heyting } } => {
            pl_eval(cli, sentence, valuation, heyting.as_deref())
        }
    }
}

fn contexts(cli: &Cli, poset: &ContextPoset) -> Outcome {
    match cli.format {
        Format::Dot => Ok(poset.to_dot()),
        Format::Json => {
            let contexts: Vec<Value> = poset
                .contexts()
                .iter()
                .map(|c| {
                    json!({
                        "key": c.key().as_str(),
                        "atoms": c.len(),
                        "ranks": c.atoms().iter().map(|a| a.rank()).collect::<Vec<_>>(),
                        "projections": c.atoms().iter().map(|a| MatrixJson::from_matrix(a.matrix())).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let covers: Vec<[&str; 2]> =
                poset.order().covers().into_iter().map(|(a, b)| [poset.key(a).as_str(), poset.key(b).as_str()]).collect();
            Ok(pretty(&json!({
                "dim": poset.dim(),
                "closed_under_intersection": poset.is_closed_under_intersection(),
                "contexts": contexts,
                "covers": covers,
            })))
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = (0..poset.len())
                .map(|v| {
                    let c = poset.context(v);
                    let below: Vec<&str> = poset.down_set(v).into_iter().filter(|&u| u != v).map(|u| poset.key(u).as_str()).collect();
                    vec![c.key().to_string(), c.len().to_string(), list(c.atoms().iter().map(|a| a.rank())), list(below)]
                })
                .collect();
            Ok(render(&["context", "atoms", "ranks", "subcontexts"], &rows))
        }
    }
}

fn dasein(cli: &Cli, poset: &ContextPoset, input: &DaseinInput) -> Outcome {
    if let Some(path) = &input.projection {
        let p = parse_projection(&read(path)?, cli.eps).within("hermitian-core")?;
        let pick = |mode| -> Result<ClopenSubobject, Failure> {
            let sets = poset.contexts().iter().map(|c| daseinised_atoms(&p, c, mode, cli.eps)).collect::<qtopos::Result<Vec<_>>>().within("daseinisation")?;
            Ok(ClopenSubobject::from_components(sets))
        };
        let (outer, inner) = (pick(Mode::Outer)?, pick(Mode::Inner)?);
        return match cli.format {
            Format::Json => {
                let components: BTreeMap<String, Value> = (0..poset.len())
                    .map(|v| {
                        let atoms = |s: &ClopenSubobject| s.at(v).iter().collect::<Vec<_>>();
                        (poset.key(v).to_string(), json!({ "outer": atoms(&outer), "inner": atoms(&inner) }))
                    })
                    .collect();
                Ok(pretty(&json!({ "input": "projection", "components": components })))
            }
            Format::Dot => Ok(poset.to_dot_with_selection(outer.components())),
            Format::Table => Ok(subobject_table(&[("outer", &outer), ("inner", &inner)], poset)),
        };
    }
    let path = input.op.as_ref().ok_or_else(|| Failure::Usage("one of --projection or --op is required".into()))?;
    let a = parse_operator(&read(path)?, cli.eps).within("hermitian-core")?;
    let mut components = BTreeMap::new();
    let mut rows = Vec::new();
    for v in 0..poset.len() {
        let ctx = poset.context(v);
        let mut entry = serde_json::Map::new();
        let mut values = BTreeMap::new();
        for (name, mode) in [("outer", Mode::Outer), ("inner", Mode::Inner)] {
            let vals = gelfand_values(&a, ctx, mode, cli.eps).within("daseinisation")?;
            let op = daseinise_operator(&a, ctx, mode, cli.eps).within("daseinisation")?;
            entry.insert(name.into(), json!({ "values": vals, "matrix": MatrixJson::from_matrix(op.matrix()) }));
            values.insert(name, vals);
        }
        for atom in 0..ctx.len() {
            rows.push(vec![
                poset.key(v).to_string(),
                atom.to_string(),
                values["inner"][atom].to_string(),
                values["outer"][atom].to_string(),
            ]);
        }
        components.insert(poset.key(v).to_string(), Value::Object(entry));
    }
    match cli.format {
        Format::Json => Ok(pretty(&json!({ "input": "operator", "components": components }))),
        Format::Table => Ok(render(&["context", "atom", "inner", "outer"], &rows)),
        Format::Dot => Err(unsupported(cli.format, "dasein --op")),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HeytingValuation {
    base: String,
    atoms: BTreeMap<String, Vec<String>>,
}

fn letter(name: &str) -> Result<u32, Failure> {
    match parse(name) {
        Ok(Sentence::Atom(i)) => Ok(i),
        _ => Err(Error::InvalidInput(format!("valuation key {name:?} is not a sentence letter")).into()),
    }
}

fn pl_eval(cli: &Cli, sentence: &str, valuation: &Path, heyting: Option<&Path>) -> Outcome {
    let s = parse(sentence).map_err(Error::from)?;
    let text = read(valuation)?;
    let mut report = json!({ "sentence": s.to_string(), "symbolic": s.symbolic() });
    match heyting {
        None => {
            let raw: BTreeMap<String, bool> = serde_json::from_str(&text).map_err(Error::from)?;
            let v = raw.iter().map(|(k, &b)| Ok((letter(k)?, b))).collect::<Result<BTreeMap<_, _>, Failure>>()?;
            let value = s.eval_classical(&v)?;
            report["semantics"] = json!("classical");
            report["value"] = json!(value);
            match cli.format {
                Format::Json => Ok(pretty(&report)),
                Format::Table => Ok(render(&["sentence", "value"], &[vec![s.symbolic(), value.to_string()]])),
                Format::Dot => Err(unsupported(cli.format, "pl eval")),
            }
        }
        Some(path) => {
            let poset: PosetJson = serde_json::from_str(&read(path)?).map_err(Error::from)?;
            let (order, names) = poset.to_order()?;
            let raw: HeytingValuation = serde_json::from_str(&text).map_err(Error::from)?;
            let index = |n: &String| names.get(n).copied().ok_or_else(|| Error::InvalidInput(format!("unknown poset element {n:?}")));
            let base = index(&raw.base)?;
            let mut v = BTreeMap::new();
            for (k, members) in &raw.atoms {
                let members = members.iter().map(index).collect::<Result<BTreeSet<_>, _>>()?;
                v.insert(letter(k)?, Sieve::new(&order, base, members)?);
            }
            let result = s.eval_heyting(&v, &order)?;
            let by_index: BTreeMap<usize, &String> = names.iter().map(|(n, &i)| (i, n)).collect();
            let members: Vec<&String> = result.members().iter().map(|i| by_index[i]).collect::<BTreeSet<_>>().into_iter().collect();
            report["semantics"] = json!("heyting");
            report["base"] = json!(raw.base);
            report["value"] = json!(members);
            report["maximal"] = json!(result.is_maximal());
            match cli.format {
                Format::Json => Ok(pretty(&report)),
                Format::Table => Ok(render(
                    &["sentence", "base", "sieve", "maximal"],
                    &[vec![s.symbolic(), raw.base.clone(), list(&members), result.is_maximal().to_string()]],
                )),
                Format::Dot => Err(unsupported(cli.format, "pl eval")),
            }
        }
    }
}
