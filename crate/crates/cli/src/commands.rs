use std::fmt::Write as _;
use std::path::Path;

use sal_core::algebra::{build_t_beta, is_simple};
use sal_core::axial::{
    miyamoto_group, three_transposition_check, transition_flags, transitional_betas, AxialError, ExceptionalCase,
};
use sal_core::designs::{
    construct_ag, construct_named, read_blocks, validate_psts, write_blocks, Block, DesignError, NamedSystem,
    PartialTripleSystem, SteinerTripleSystem,
};
use sal_core::exact::{format_scalar, Scalar};
use sal_core::idempotents::{block_catalog, BlockIdempotentCatalog};
use serde_json::{json, Value};

use crate::analyze::{analyze, CheckStatus, CHECKS};
use crate::{read_system, Cli, CliError, Command, JsonArg, SCHEMA};

/// Runs one invocation. `Ok(true)` means every requested check passed or was
/// excluded.
pub fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Construct { name, order, output } => construct(&name, order, output.as_deref()),
        Command::Validate { file, json } => validate(&file, &json),
        Command::Analyze { file, betas, checks, timings, json, cap } => {
            let s = read_system(&file)?;
            let mut reports = Vec::with_capacity(betas.len());
            for beta in &betas {
                reports.push(analyze(&s, beta, &checks, cap.closure_cap, timings)?);
            }
            let ok = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                writeln!(text, "β = {}", format_scalar(&r.beta)).unwrap();
                for (name, v) in &r.verdicts {
                    let status = serde_json::to_value(v.status)?;
                    writeln!(text, "  {name:<20} {}", status.as_str().unwrap_or("?")).unwrap();
                }
            }
            emit(&json, json!({ "schema": SCHEMA, "reports": reports }), &text)?;
            Ok(ok)
        }
        Command::Sweep { file, betas, json } => sweep(&file, betas, &json),
        Command::Catalog { file, beta, block, json } => catalog(&file, beta, &block, &json),
        Command::Group { file, json, cap } => group(&file, cap.closure_cap, &json),
        Command::Checks => {
            for (name, what) in CHECKS {
                println!("{name:<20} {what}");
            }
            Ok(true)
        }
    }
}

/// Prints `text`, and the JSON document to `--json` if given (`-` means
/// stdout, replacing the text).
fn emit(target: &JsonArg, doc: Value, text: &str) -> Result<(), CliError> {
    let rendered = serde_json::to_string_pretty(&doc)? + "\n";
    match target.json.as_deref() {
        Some(p) if p == Path::new("-") => print!("{rendered}"),
        Some(p) => {
            std::fs::write(p, rendered).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?;
            print!("{text}");
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn construct(name: &str, order: Option<usize>, output: Option<&Path>) -> Result<bool, CliError> {
    let need = |what: &str| order.ok_or_else(|| CliError::Usage(format!("`{name}` needs {what}")));
    let s: SteinerTripleSystem = match name {
        "fano" => construct_named(NamedSystem::Fano)?,
        "ag" => construct_ag(need("a dimension")? as u32)?,
        "bose" => construct_named(NamedSystem::Bose(need("an order")?))?,
        "skolem" => construct_named(NamedSystem::Skolem(need("an order")?))?,
        other => return Err(CliError::Usage(format!("unknown construction `{other}` (fano, ag, bose, skolem)"))),
    };
    let text = write_blocks(s.base());
    match output {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source })?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn validate(file: &Path, target: &JsonArg) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Io { path: file.to_path_buf(), source })?;
    let raw = read_blocks(&text)?;
    let mut doc = json!({ "schema": SCHEMA, "n": raw.n, "b": raw.blocks.len() });
    let outcome: Result<SteinerTripleSystem, DesignError> =
        PartialTripleSystem::new(&raw).and_then(SteinerTripleSystem::new);
    let ok = match &outcome {
        Ok(s) => {
            doc["sts"] = json!(true);
            doc["r"] = json!(s.replication());
            doc["hall"] = json!(s.is_hall());
            true
        }
        Err(e) => {
            doc["sts"] = json!(false);
            doc["partial"] = json!(validate_psts(&raw).is_ok());
            doc["error"] = json!(e.to_string());
            false
        }
    };
    let text = match &outcome {
        Ok(s) => format!("STS({}) with {} blocks, r = {}, hall = {}\n", s.n(), s.blocks().len(), s.replication(), s.is_hall()),
        Err(e) => format!("not a Steiner triple system: {e}\n"),
    };
    emit(target, doc, &text)?;
    Ok(ok)
}

fn sweep(file: &Path, extra: Vec<Scalar>, target: &JsonArg) -> Result<bool, CliError> {
    let s = read_system(file)?;
    let n = s.n();
    if n <= 3 {
        return Err(CliError::Usage("sweep needs n > 3".into()));
    }
    let mut betas = transitional_betas(n);
    betas.extend(extra);
    betas.sort();
    betas.dedup();
    let mut rows = Vec::new();
    let mut text = format!("{:>10} {:>10} {:>10} {:>10}  {:<12} flags\n", "β", "β₊", "β₋", "ω", "simplicity");
    let mut ok = true;
    for beta in betas {
        let a = build_t_beta(&s, beta.clone())?;
        let p = a.params();
        let flags = transition_flags(&p.beta_plus, &p.beta_minus);
        let verdict = is_simple(&a)?.label();
        let may_fail = flags.iter().any(|f| f == "β₊ = 1" || f == "β₋ = 1");
        // Only a verdict that contradicts simplicity away from β± = 1 counts
        // against the sweep.
        ok &= may_fail || verdict == "simple";
        let cells = [&p.beta, &p.beta_plus, &p.beta_minus, &p.omega()].map(format_scalar);
        writeln!(text, "{:>10} {:>10} {:>10} {:>10}  {:<12} {}", cells[0], cells[1], cells[2], cells[3], verdict, flags.join(", "))
            .unwrap();
        rows.push(json!({
            "beta": cells[0],
            "beta_plus": cells[1],
            "beta_minus": cells[2],
            "omega": cells[3],
            "case": ExceptionalCase::classify(n, &beta),
            "flags": flags,
            "simplicity": verdict,
        }));
    }
    emit(target, json!({ "schema": SCHEMA, "n": n, "rows": rows }), &text)?;
    Ok(ok)
}

fn catalog(file: &Path, beta: Scalar, block: &[usize], target: &JsonArg) -> Result<bool, CliError> {
    let s = read_system(file)?;
    let a = build_t_beta(&s, beta)?;
    let blocks: Vec<Block> = match block {
        [] => s.blocks().to_vec(),
        [i, j, k] => vec![[*i, *j, *k]],
        _ => return Err(CliError::Usage("--block takes exactly three points i,j,k".into())),
    };
    let cats: Vec<BlockIdempotentCatalog> = blocks.iter().map(|b| block_catalog(&a, b)).collect::<Result<_, _>>()?;
    let ok = cats.iter().all(|c| c.all_verified());
    let mut text = String::new();
    for c in &cats {
        writeln!(text, "block {:?}", c.block).unwrap();
        for e in &c.entries {
            let coords: Vec<String> = e.coords.iter().map(format_scalar).collect();
            let label = serde_json::to_value(e.label)?;
            let mark = if e.verified { "ok" } else { "FAILED" };
            writeln!(text, "  {:<14} [{}] {mark}", label.as_str().unwrap_or("?"), coords.join(", ")).unwrap();
        }
    }
    emit(target, json!({ "schema": SCHEMA, "catalogs": cats }), &text)?;
    Ok(ok)
}

fn group(file: &Path, cap: usize, target: &JsonArg) -> Result<bool, CliError> {
    let s = read_system(file)?;
    let g = match miyamoto_group(&s, cap) {
        Ok(g) => g,
        Err(AxialError::ClosureCapExceeded(c)) => {
            let doc = json!({ "schema": SCHEMA, "status": CheckStatus::Undecided, "closure_cap_exceeded": c });
            emit(target, doc, &format!("closure exceeded {c} elements\n"))?;
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let report = three_transposition_check(&s, &g);
    let ok = !s.is_hall() || report.ok();
    let text = format!(
        "{}\norder {}, [G,G] of order {}, abelianization of order {}\n3-transposition relations: {}\n",
        g.label(),
        g.order,
        g.commutator_order,
        g.abelianization_order,
        if report.relations.ok() { "hold" } else { "fail" }
    );
    let doc = json!({ "schema": SCHEMA, "label": g.label(), "group": g, "three_transposition": report });
    emit(target, doc, &text)?;
    Ok(ok)
}
