use std::io::Write;

use dirac1d::dirac::{
    default_grid_with_points, find_levels_with, nonrel_limit_report_with, to_tilde, wavefunction, DiracError,
    EnergySign, ScanOptions, SpectralLevel,
};
use dirac1d::shooting::{oracle_spectrum, OracleLevel, ShootingConfig, ShootingError, MAX_ORACLE_LEVELS};
use dirac1d::specfun::NU_SUPPORTED_MAX;
use dirac1d::{ModelParams, Parity};

use crate::scan::{run_scan, ScanSpec};
use crate::table::{fmt_real, Cell, Schema, Table};
use crate::{
    CliError, Cli, Command, CompareArgs, OutputArgs, ParamArgs, ParitySelect, Representation, ScanArgs,
    SpectrumArgs, Status, WavefunctionArgs, NU_BOX_ENV,
};

/// Execute one command. `nu_box` is the raw value of the ν-ceiling override.
pub fn run(cli: Cli, nu_box: Option<&str>, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let options = ScanOptions {
        nu_max: nu_ceiling(nu_box)?,
        ..ScanOptions::default()
    };
    match cli.command {
        Command::Spectrum(a) => spectrum(&a, options, stdout),
        Command::Scan(a) => scan(&a, &options, stdout),
        Command::Wavefunction(a) => wave(&a, &options, stdout),
        Command::Compare(a) => compare(&a, &options, stdout),
    }
}

fn nu_ceiling(raw: Option<&str>) -> Result<f64, CliError> {
    match raw {
        None => Ok(NU_SUPPORTED_MAX),
        Some(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v > -1.0)
            .ok_or_else(|| CliError::Usage(format!("{NU_BOX_ENV} must be a number above -1, got '{s}'"))),
    }
}

fn model_params(p: &ParamArgs) -> Result<ModelParams, CliError> {
    let usage = |e: dirac1d::ParamsError| CliError::Usage(e.to_string());
    match (p.alpha, p.m, p.g) {
        (Some(a), _, _) => ModelParams::from_alpha(a).map_err(usage),
        (None, Some(m), Some(g)) => ModelParams::new(m, g).map_err(usage),
        _ => Err(CliError::Usage("either --alpha or both --m and --g are required".into())),
    }
}

fn param_meta(t: &mut Table, p: &ModelParams) {
    t.meta("units", "hbar = c = 1; E in the units of m, E_over_m and epsilon dimensionless");
    t.meta("m", fmt_real(p.m()));
    t.meta("g", fmt_real(p.g()));
    t.meta("alpha", fmt_real(p.alpha()));
}

fn emit(table: &Table, output: &OutputArgs, to_stdout: bool, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = if output.json { table.to_json() } else { table.to_csv() };
    if let Some(path) = &output.out {
        std::fs::write(path, &text)?;
    }
    if to_stdout || output.out.is_none() {
        stdout.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn spectrum(a: &SpectrumArgs, mut options: ScanOptions, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let params = model_params(&a.params)?;
    if a.count == 0 || a.count > dirac1d::dirac::MAX_LEVELS {
        return Err(CliError::Usage(format!(
            "--count must be between 1 and {}",
            dirac1d::dirac::MAX_LEVELS
        )));
    }
    if a.oracle && a.negative {
        return Err(CliError::Usage("--oracle covers positive energies only".into()));
    }
    if a.negative {
        options.energy = EnergySign::Negative;
    }
    let parities: &[Parity] = match a.parity {
        ParitySelect::Even => &[Parity::Even],
        ParitySelect::Odd => &[Parity::Odd],
        ParitySelect::Both => &Parity::BOTH,
    };
    let mut failure = None;
    let mut levels: Vec<SpectralLevel> = Vec::new();
    for &parity in parities {
        match find_levels_with(&params, parity, a.count, &options) {
            Ok(l) => levels.extend(l),
            Err(DiracError::ScanExhausted { found, .. }) => {
                failure.get_or_insert(format!(
                    "{parity}: found {} of {} levels below nu = {}",
                    found.len(),
                    a.count,
                    options.nu_max
                ));
                levels.extend(found);
            }
            Err(e) => {
                failure.get_or_insert(format!("{parity}: {e}"));
            }
        }
    }

    let oracle: Vec<OracleLevel> = if a.oracle {
        let wanted = (2 * a.count).min(MAX_ORACLE_LEVELS);
        match oracle_spectrum(&params, wanted, &ShootingConfig::default()) {
            Ok(o) => o,
            Err(ShootingError::ScanExhausted { found, .. }) => {
                failure.get_or_insert("shooting oracle ran out of energy range".into());
                found
            }
            Err(e) => {
                failure.get_or_insert(format!("shooting oracle: {e}"));
                Vec::new()
            }
        }
    } else {
        Vec::new()
    };

    let mut columns = vec!["index", "parity", "nu", "E", "E_over_m", "epsilon", "residual"];
    if a.oracle {
        columns.extend(["E_oracle", "rel_dE"]);
    }
    let mut t = Table::new(Schema::Spectrum, &columns);
    param_meta(&mut t, &params);
    t.meta(
        "branch",
        if a.negative {
            "negative energy; epsilon = |E|/m - 1"
        } else {
            "positive energy; epsilon = E/m - 1"
        },
    );
    t.meta("nu_max", fmt_real(options.nu_max));
    for l in &levels {
        let mut row = vec![
            Cell::Int(l.index as i64),
            Cell::Text(l.parity.to_string()),
            Cell::Real(l.nu),
            Cell::Real(l.energy),
            Cell::Real(l.energy / params.m()),
            Cell::Real(l.epsilon),
            Cell::Real(l.residual),
        ];
        if a.oracle {
            let o = oracle.iter().filter(|o| o.parity == l.parity).nth(l.index);
            row.push(Cell::opt(o.map(|o| o.energy)));
            row.push(Cell::opt(o.map(|o| ((o.energy - l.energy) / l.energy).abs())));
        }
        t.push(row);
    }
    emit(&t, &a.output, true, stdout)?;
    Ok(failure.map_or(Status::Success, Status::SolverFailure))
}

fn scan(a: &ScanArgs, options: &ScanOptions, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let spec = ScanSpec {
        alpha_min: a.alpha_min,
        alpha_max: a.alpha_max,
        points: a.points,
        levels: a.levels,
    };
    spec.validate().map_err(CliError::Usage)?;
    let result = run_scan(&spec, options);
    let mut t = result.to_table();
    t.meta("nu_max", fmt_real(options.nu_max));
    emit(&t, &a.output, false, stdout)?;
    match result.failures() {
        0 => Ok(Status::Success),
        n => Ok(Status::SolverFailure(format!("{n} scan entries have no relativistic value"))),
    }
}

fn wave(a: &WavefunctionArgs, options: &ScanOptions, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let params = model_params(&a.params)?;
    if a.grid_points < 9 || !(a.grid_points - 1).is_multiple_of(8) {
        return Err(CliError::Usage("--grid-points must be of the form 8k+1".into()));
    }
    let level = match find_levels_with(&params, a.parity, a.index + 1, options) {
        Ok(mut l) => l.pop().expect("count >= 1"),
        Err(DiracError::ScanExhausted { found, .. }) => {
            return Ok(Status::SolverFailure(format!(
                "level {} requested but only {} {} levels found",
                a.index,
                found.len(),
                a.parity
            )))
        }
        Err(DiracError::Count(_)) => {
            return Ok(Status::SolverFailure(format!(
                "level {} is beyond the {} levels the solver returns",
                a.index,
                dirac1d::dirac::MAX_LEVELS
            )))
        }
        Err(e) => return Ok(Status::SolverFailure(e.to_string())),
    };
    let grid = default_grid_with_points(&params, &level, a.grid_points)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let wf = match wavefunction(&params, &level, &grid) {
        Ok(w) => w,
        Err(e) => return Ok(Status::SolverFailure(e.to_string())),
    };
    let columns: &[&str] = match a.representation {
        Representation::Standard => &["x", "u", "v"],
        Representation::Tilde => &["x", "u_tilde", "v_tilde"],
    };
    let mut t = Table::new(Schema::Wavefunction, columns);
    param_meta(&mut t, &params);
    t.meta("parity", level.parity.to_string());
    t.meta("index", level.index.to_string());
    t.meta("nu", fmt_real(level.nu));
    t.meta("E", fmt_real(level.energy));
    t.meta("epsilon", fmt_real(level.epsilon));
    t.meta("residual", fmt_real(level.residual));
    t.meta("continuity_gap", fmt_real(wf.continuity_gap));
    t.meta("norm", fmt_real(wf.norm));
    t.meta(
        "representation",
        match a.representation {
            Representation::Standard => "standard (u, v)",
            Representation::Tilde => "tilde ((u+v)/sqrt2, (v-u)/sqrt2), global phase dropped",
        },
    );
    for s in &wf.samples {
        let (p, q) = match a.representation {
            Representation::Standard => (s.u, s.v),
            Representation::Tilde => to_tilde(*s),
        };
        t.push(vec![Cell::Real(s.x), Cell::Real(p), Cell::Real(q)]);
    }
    emit(&t, &a.output, false, stdout)?;
    Ok(Status::Success)
}

fn compare(a: &CompareArgs, options: &ScanOptions, stdout: &mut dyn Write) -> Result<Status, CliError> {
    let params = model_params(&a.params)?;
    if params.alpha() < 2.0 {
        return Err(CliError::Usage("compare needs alpha >= 2".into()));
    }
    if a.levels == 0 || a.levels > dirac1d::dirac::MAX_LEVELS {
        return Err(CliError::Usage(format!(
            "--levels must be between 1 and {}",
            dirac1d::dirac::MAX_LEVELS
        )));
    }
    let rows = match nonrel_limit_report_with(&params, a.levels, options) {
        Ok(r) => r,
        Err(e) => return Ok(Status::SolverFailure(e.to_string())),
    };
    let mut columns = vec!["level", "parity", "epsilon_rel", "epsilon_nonrel", "deviation"];
    if a.fit {
        columns.push("epsilon_times_alpha");
    }
    let mut t = Table::new(Schema::Compare, &columns);
    param_meta(&mut t, &params);
    t.meta("deviation", "(epsilon_rel - epsilon_nonrel) / epsilon_nonrel");
    for r in rows {
        let mut row = vec![
            Cell::Int(r.n as i64),
            Cell::Text(r.parity.to_string()),
            Cell::Real(r.epsilon_rel),
            Cell::Real(r.epsilon_nonrel),
            Cell::Real(r.deviation),
        ];
        if a.fit {
            row.push(Cell::Real(r.epsilon_rel * params.alpha()));
        }
        t.push(row);
    }
    emit(&t, &a.output, true, stdout)?;
    Ok(Status::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_ceiling_parsing() {
        assert_eq!(nu_ceiling(None).unwrap(), NU_SUPPORTED_MAX);
        assert_eq!(nu_ceiling(Some(" 450 ")).unwrap(), 450.0);
        assert!(nu_ceiling(Some("lots")).is_err());
        assert!(nu_ceiling(Some("-5")).is_err());
    }

    #[test]
    fn parameter_selection() {
        let alpha = ParamArgs {
            alpha: Some(2.0),
            m: None,
            g: None,
        };
        assert_eq!(model_params(&alpha).unwrap().alpha(), 2.0);
        let mg = ParamArgs {
            alpha: None,
            m: Some(2.0),
            g: Some(4.0),
        };
        assert_eq!(model_params(&mg).unwrap().alpha(), 1.0);
        let none = ParamArgs {
            alpha: None,
            m: None,
            g: None,
        };
        assert!(model_params(&none).is_err());
    }
}
