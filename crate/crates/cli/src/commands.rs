use std::io::Write;
use std::path::Path;

use entactic_core::catalog::{self, lookup, w_robustness_mixer, w_robustness_mixture};
use entactic_core::conversion::{
    bs_mixer_for, build_filter_map, max_probability, verify_preservation_sampled,
    ConversionOptions, FreeMixer, RobustnessBound, Theory,
};
use entactic_core::ghz_symmetric::{
    is_fs_symmetric, symmetric_robustness_exact, twirl, ExactGhzParams,
};
use entactic_core::io::{density_from_json, state_from_json, AnyState};
use entactic_core::measures::{
    geometric_bs, geometric_fs, robustness_bipartite_pure, robustness_bs_upper, FsCertifierOptions,
    OptimizerOptions,
};
use entactic_core::witness::{
    ghz_robustness_witness, ghz_witness_vertex_values, robustness_lower_from_witness,
    w_robustness_witness, Witness,
};
use entactic_core::{Bipartition, Error};
use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::{exact_pair, parse_rational, to_f64};
use crate::report::reproduce;
use crate::{Cli, CliError, Command, MeasureKind, TheoryArg, WitnessName};

type Out<'a> = &'a mut dyn Write;

fn emit<T: Serialize>(out: Out, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out).map_err(|e| CliError::Io(e.to_string()))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_state(path: &Path) -> Result<AnyState, CliError> {
    state_from_json(&read_file(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn optimizer(seed: u64, restarts: usize) -> Result<OptimizerOptions, CliError> {
    let opts = OptimizerOptions {
        restarts,
        ..OptimizerOptions::with_seed(seed)
    };
    opts.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(opts)
}

pub(crate) fn dispatch(cli: &Cli, out: Out, err: Out) -> Result<(), CliError> {
    let seed = cli.seed;
    let verbose = |err: Out, msg: String| {
        if cli.verbose {
            let _ = writeln!(err, "{msg}");
        }
    };
    match &cli.command {
        Command::Catalog { name: None, .. } => {
            let names: Vec<Value> = catalog::NAMES
                .iter()
                .map(|(name, params)| {
                    json!({ "name": name, "params": params.split_whitespace().collect::<Vec<_>>() })
                })
                .collect();
            emit(out, &json!({ "states": names }))
        }
        Command::Catalog {
            name: Some(name),
            params,
            density,
        } => {
            let entry = lookup(name, params).map_err(|e| match e {
                Error::UnknownState(_) => CliError::Usage(e.to_string()),
                other => CliError::Compute(other),
            })?;
            verbose(
                err,
                format!("{} with params {:?}", entry.name, entry.params),
            );
            if *density {
                emit(out, &entry.state.density())
            } else {
                emit(out, &entry.state)
            }
        }
        Command::Measure {
            kind,
            input,
            cut,
            restarts,
        } => {
            let state = read_state(input)?;
            let psi = state.pure()?;
            let result = match kind {
                MeasureKind::Gbs => serde_json::to_value(geometric_bs(psi)?),
                MeasureKind::Gfs => {
                    serde_json::to_value(geometric_fs(psi, &optimizer(seed, *restarts)?)?)
                }
                MeasureKind::RbsUpper => serde_json::to_value(robustness_bs_upper(psi)?),
                MeasureKind::Rpure => {
                    let labels = cut
                        .as_ref()
                        .ok_or_else(|| CliError::Usage("--kind rpure needs --cut".into()))?;
                    let cut = Bipartition::from_one_based(psi.n(), labels)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    let value = robustness_bipartite_pure(psi, cut)?;
                    Ok(json!({ "value": value, "cut": cut }))
                }
            }
            .map_err(|e| CliError::Io(e.to_string()))?;
            verbose(err, format!("{kind:?}: {}", result["value"]));
            emit(out, &result)
        }
        Command::Convert {
            from,
            to,
            theory,
            r_upper,
            build,
            p,
            mixer,
            verify,
        } => {
            if !build && (p.is_some() || verify.is_some() || mixer.is_some()) {
                return Err(CliError::Usage(
                    "--p, --mixer and --verify need --build".into(),
                ));
            }
            let psi1 = read_state(from)?.pure()?.clone();
            let psi2 = read_state(to)?.pure()?.clone();
            let theory = match theory {
                TheoryArg::Fsp => Theory::Fsp,
                TheoryArg::Bsp => Theory::Bsp,
            };
            let opts = ConversionOptions {
                optimizer: OptimizerOptions::with_seed(seed),
                r_upper: r_upper.map(RobustnessBound::supplied).transpose()?,
            };
            let cert = max_probability(&psi1, &psi2, theory, &opts)?;
            verbose(
                err,
                format!(
                    "p_max = {} (deterministic: {})",
                    cert.p_max, cert.deterministic
                ),
            );
            if !build {
                return emit(out, &cert);
            }
            let free_mixer: FreeMixer = match (theory, mixer) {
                (Theory::Bsp, None) => bs_mixer_for(&psi2)?.into(),
                (Theory::Bsp, Some(_)) => {
                    return Err(CliError::Usage(
                        "--mixer is only used with --theory fsp".into(),
                    ))
                }
                (Theory::Fsp, None) => {
                    return Err(CliError::Usage("--build --theory fsp needs --mixer".into()))
                }
                (Theory::Fsp, Some(path)) => {
                    let sigma = density_from_json(&read_file(path)?)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    FreeMixer::certify_fs(
                        &psi2,
                        sigma,
                        cert.r_target,
                        &FsCertifierOptions::default(),
                    )?
                }
            };
            let map = build_filter_map(&cert, &psi1, &psi2, p.unwrap_or(cert.p_max), free_mixer)?;
            let preservation = verify
                .map(|n| verify_preservation_sampled(&map, n, seed))
                .transpose()?;
            if let Some(rep) = &preservation {
                verbose(
                    err,
                    format!("{} violations in {} samples", rep.violations, rep.samples),
                );
            }
            emit(
                out,
                &json!({
                    "certificate": cert,
                    "map": {
                        "p": map.p,
                        "theory": map.theory,
                        "mixer_weight": map.mixer.weight(),
                        "mixer_evidence": map.mixer.evidence(),
                        "mixer": map.mixer.state(),
                    },
                    "preservation": preservation,
                }),
            )
        }
        Command::Twirl { input } => {
            let rho = read_state(input)?.density();
            let params = twirl(&rho)?;
            let fs = is_fs_symmetric(&params, 1e-12);
            verbose(
                err,
                format!("{:?}, fully separable: {fs}", params.as_array()),
            );
            emit(
                out,
                &json!({
                    "lambda_plus": params.plus,
                    "lambda_minus": params.minus,
                    "lambda_rest": params.rest,
                    "fully_separable": fs,
                }),
            )
        }
        Command::Witness { name, check, eval } => {
            let (witness, reference) = shipped_witness(*name)?;
            let witness = if *check || eval.is_some() {
                witness.verified(&OptimizerOptions::with_seed(seed))?
            } else {
                witness
            };
            let mut body = json!({
                "name": witness.name,
                "trace_values": reference,
                "verified_range": witness.verified_range,
                "admissible": witness.is_admissible(),
            });
            if let Some(path) = eval {
                let rho = read_state(path)?.density();
                let lower = robustness_lower_from_witness(&rho, &witness)?;
                verbose(err, format!("robustness >= {lower}"));
                body["value"] = json!(witness.value(&rho)?);
                body["robustness_lower_bound"] = json!(lower);
            }
            emit(out, &body)
        }
        Command::SymmetricRobustness { params } => {
            let [plus, minus, rest] = params.as_slice() else {
                return Err(CliError::Usage(format!(
                    "--params takes three weights λ+,λ-,λ; got {}",
                    params.len()
                )));
            };
            let parse = |s: &String| parse_rational(s).map_err(CliError::Usage);
            let target = ExactGhzParams::new(parse(plus)?, parse(minus)?, parse(rest)?)?;
            let r = symmetric_robustness_exact(&target)?;
            let m = &r.mixer;
            verbose(err, format!("robustness = {}", r.value));
            emit(
                out,
                &json!({
                    "value": to_f64(&r.value),
                    "exact": exact_pair(&r.value),
                    "mixer": {
                        "lambda_plus": to_f64(&m.plus),
                        "lambda_minus": to_f64(&m.minus),
                        "lambda_rest": to_f64(&m.rest),
                    },
                    "mixer_exact": {
                        "lambda_plus": exact_pair(&m.plus),
                        "lambda_minus": exact_pair(&m.minus),
                        "lambda_rest": exact_pair(&m.rest),
                    },
                }),
            )
        }
        Command::Reproduce {
            all,
            only,
            timings,
            list,
            out: path,
        } => {
            let registry = crate::claims::registry();
            if *list {
                let ids: Vec<Value> = registry
                    .iter()
                    .map(|c| json!({ "id": c.id, "criterion": c.criterion, "description": c.description }))
                    .collect();
                return emit(out, &ids);
            }
            let selection: Vec<String> = if *all {
                registry.iter().map(|c| c.id.to_string()).collect()
            } else {
                only.iter().filter(|s| !s.is_empty()).cloned().collect()
            };
            let report = reproduce(&selection, seed, *timings).map_err(CliError::Usage)?;
            if cli.verbose {
                for c in &report.claims {
                    let _ = writeln!(
                        err,
                        "{} {:<6} {}",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.criterion,
                        c.id
                    );
                }
            }
            if let Some(path) = path {
                let text = serde_json::to_string_pretty(&report)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                std::fs::write(path, text + "\n")
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            emit(out, &report)?;
            if report.all_pass() {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .claims
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.id.as_str())
                    .collect();
                Err(CliError::Failed(format!(
                    "{} of {} claims failed: {}",
                    report.summary.failed,
                    report.summary.total,
                    failed.join(", ")
                )))
            }
        }
    }
}

/// The witness and its values on the states it was built for.
fn shipped_witness(name: WitnessName) -> Result<(Witness, Value), CliError> {
    Ok(match name {
        WitnessName::Ghz => {
            let w = ghz_robustness_witness();
            let vertices: Vec<Value> = ghz_witness_vertex_values()
                .iter()
                .map(|v| json!({ "value": to_f64(v), "exact": exact_pair(v) }))
                .collect();
            let reference = json!({
                "ghz": w.value_pure(&catalog::ghz(3, 2)?)?,
                "ghz_minus": w.value_pure(&catalog::ghz_minus())?,
                "separable_vertices": vertices,
            });
            (w, reference)
        }
        WitnessName::W => {
            let w = w_robustness_witness();
            let reference = json!({
                "w": w.value_pure(&catalog::w_state())?,
                "w_bar": w.value_pure(&catalog::w_bar())?,
                "mixer": w.value(&w_robustness_mixer())?,
                "mixture": w.value(&w_robustness_mixture())?,
            });
            (w, reference)
        }
    })
}
