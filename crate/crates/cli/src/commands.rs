use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use chp_pack::builder::{build_chp, PackingConfiguration};
use chp_pack::chp::{chp_density, count_configurations, enumerate_for, min_dna, solve_border, CountInput, Dna};
use chp_pack::io::{compute_tables, read_config, render_svg, tables_csv, to_json_exact, write_config_string, SvgOptions};
use chp_pack::neighbors::min_distance;
use chp_pack::optimizer::{algorithm1_trial, algorithm2_trial, refine_with, OptimizerParams, PinSet};
use chp_pack::validation::{density, validate, CONTACT_TOL};

use crate::cli::{Command, LadderArgs, PinMode};

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn load(path: &Path) -> Result<PackingConfiguration> {
    read_config(path).with_context(|| format!("reading {}", path.display()))
}

fn params_from(ladder: &LadderArgs, seed: u64) -> OptimizerParams {
    OptimizerParams {
        s_final: ladder.s_final,
        s_factor: ladder.s_factor,
        max_inner_iters: ladder.max_inner_iters,
        seed,
        ..OptimizerParams::default()
    }
}

/// Disks touching the container plus one sitting at the origin.
fn border_pins(config: &PackingConfiguration) -> PinSet {
    let slack = CONTACT_TOL * config.diameter;
    PinSet::new(config.centers.iter().enumerate().filter_map(|(i, &p)| {
        let on_edge = !config.spec.near_edges(p, slack).is_empty();
        let at_center = p.norm() <= slack;
        (on_edge || at_center).then_some(i)
    }))
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve(s) => {
            let border = solve_border(s.sigma, s.k)?;
            emit(None, &to_json_exact(&border)?)?;
        }
        Command::Density(s) => {
            emit(None, &format!("{:.12}\n", chp_density(s.sigma, s.k)?))?;
        }
        Command::Count(s) => {
            let border = solve_border(s.sigma, s.k)?;
            emit(None, &format!("{}\n", count_configurations(&CountInput::from_border(&border))))?;
        }
        Command::Enumerate { shape, limit } => {
            let border = solve_border(shape.sigma, shape.k)?;
            let mut text = String::new();
            for dna in enumerate_for(&border, limit)? {
                text.push_str(&dna.letters);
                text.push('\n');
            }
            emit(None, &text)?;
        }
        Command::Build { shape, dna, output } => {
            let border = solve_border(shape.sigma, shape.k)?;
            let dna = match dna {
                Some(letters) => Dna::from_letters(&letters, &border)?,
                None => min_dna(&border),
            };
            let config = build_chp(shape.sigma, shape.k, &dna)?;
            emit(output.as_deref(), &write_config_string(&config)?)?;
        }
        Command::Tables { sigma_list, k_max, cap, output } => {
            let rows = compute_tables(&sigma_list, k_max, cap)?;
            emit(output.as_deref(), &tables_csv(&rows))?;
        }
        Command::Pack { sigma, n, seed, trials, ladder, refine, output } => {
            if trials == 0 {
                bail!(chp_pack::Error::PreconditionViolated("--trials must be at least 1".into()));
            }
            let params = params_from(&ladder, seed);
            let results: Vec<PackingConfiguration> = (0..trials as u64)
                .into_par_iter()
                .map(|t| algorithm1_trial(sigma, n, &params, t, &mut |_| {}))
                .collect::<chp_pack::Result<_>>()?;
            // strict comparison keeps the lowest trial index on ties
            let mut best = &results[0];
            for c in &results[1..] {
                if c.diameter > best.diameter {
                    best = c;
                }
            }
            let mut best = best.clone();
            if refine {
                best = refine_with(&best, &PinSet::none(), params.max_inner_iters, &params)?.config;
            }
            emit(output.as_deref(), &write_config_string(&best)?)?;
        }
        Command::Shake { input, trials, pin, seed, amplitude, ladder, refine, output, csv } => {
            let mut config = load(&input)?;
            let mut params = params_from(&ladder, seed);
            params.perturb_amplitude = amplitude;
            let pins = match pin {
                PinMode::Border => border_pins(&config),
                PinMode::None => PinSet::none(),
            };
            let mut table = String::from("trial,rung,s,min_distance,density\n");
            for t in 0..trials {
                let before = min_distance(&config.centers);
                let outcome = algorithm2_trial(&config, &params, &pins, t as u64, &mut |r| {
                    table.push_str(&format!("{t},{},{:e},{:.17e},{:.17e}\n", r.rung, r.s, r.min_distance, r.density));
                })?;
                config = outcome.config;
                let after = min_distance(&config.centers);
                if after < before {
                    bail!("shake trial {t} lowered the minimum distance from {before} to {after}");
                }
            }
            if refine {
                config = refine_with(&config, &pins, params.max_inner_iters, &params)?.config;
            }
            emit(csv.as_deref(), &table)?;
            if let Some(p) = output {
                fs::write(&p, write_config_string(&config)?).with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!("final density {:.12}", density(&config));
        }
        Command::Validate { input, tol } => {
            let config = load(&input)?;
            let report = validate(&config, tol);
            emit(None, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            if !report.is_valid {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Render { input, output, contacts, fundamental } => {
            let config = load(&input)?;
            emit(output.as_deref(), &render_svg(&config, SvgOptions { contacts, fundamental }))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
