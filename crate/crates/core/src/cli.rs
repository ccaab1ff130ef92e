//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::output::{write_csv, write_json};
use crate::sweep::{self, SweepSpec, SweepTable};
use crate::thermo;
use crate::trap::{GasSpec, Trap1D};

#[derive(Debug, Parser)]
#[command(
    name = "bec1d",
    version,
    about = "Ideal Bose gas in a 1D power-law trap (reduced units)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical temperature over an eta grid for several U0
    TcSweep {
        #[arg(long, default_value_t = sweep::FIG1_ETA_MIN)]
        eta_min: f64,
        #[arg(long, default_value_t = sweep::FIG1_ETA_MAX)]
        eta_max: f64,
        #[arg(long, default_value_t = sweep::FIG1_STEPS)]
        steps: usize,
        #[arg(long, value_delimiter = ',', default_value = "4,2,1")]
        u0: Vec<f64>,
        #[arg(long, default_value_t = sweep::FIG1_N)]
        n: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// T_c(eta) curves over [0.05, 1.95], one series per U0
    Fig1 {
        #[arg(long, value_delimiter = ',', default_value = "4,2,1")]
        u0: Vec<f64>,
        #[arg(long, default_value_t = sweep::FIG1_N)]
        n: f64,
        #[arg(long, default_value_t = sweep::FIG1_STEPS)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Chemical potential and populations at given temperatures
    MuSolve {
        #[command(flatten)]
        gas: GasArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        temps: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Condensate fraction at given temperatures
    Condensate {
        #[command(flatten)]
        gas: GasArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        temps: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Density of states and cumulative state count
    Dos {
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value_t = 1.0)]
        u0: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        energies: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Continuum excited population against the discrete WKB occupation sum
    OracleCompare {
        #[command(flatten)]
        gas: GasArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        temps: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct GasArgs {
    #[arg(long)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub u0: f64,
    #[arg(long, default_value_t = sweep::FIG1_N)]
    pub n: f64,
}

impl GasArgs {
    fn gas(&self) -> crate::Result<GasSpec> {
        GasSpec::new(Trap1D::reduced(self.eta, self.u0)?, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file, `-` for stdout
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}

impl OutputArgs {
    fn writer(&self) -> io::Result<Box<dyn Write>> {
        if self.out.as_os_str() == "-" {
            Ok(Box::new(BufWriter::new(io::stdout().lock())))
        } else {
            Ok(Box::new(BufWriter::new(File::create(&self.out)?)))
        }
    }

    fn emit<T: Serialize>(
        &self,
        header: &[&str],
        rows: &[Vec<f64>],
        json: &T,
    ) -> anyhow::Result<()> {
        let mut out = self.writer()?;
        match self.format {
            Format::Csv => write_csv(&mut out, header, rows)?,
            Format::Json => write_json(&mut out, json)?,
        }
        out.flush()?;
        Ok(())
    }
}

const SWEEP_HEADER: [&str; 6] = ["eta", "u0", "n_particles", "tc", "tc_uncorrected", "factor"];

fn emit_sweep(output: &OutputArgs, table: &SweepTable) -> anyhow::Result<()> {
    let rows: Vec<Vec<f64>> = table
        .rows
        .iter()
        .map(|r| vec![r.eta, r.u0, r.n_particles, r.tc, r.tc_uncorrected, r.factor])
        .collect();
    output.emit(&SWEEP_HEADER, &rows, table)
}

#[derive(Serialize)]
struct MuRow {
    temperature: f64,
    tc: f64,
    mu: f64,
    excited_count: f64,
    condensate_count: f64,
}

#[derive(Serialize)]
struct CondensateRow {
    temperature: f64,
    tc: f64,
    condensate_fraction: f64,
}

#[derive(Serialize)]
struct DosRow {
    energy: f64,
    turning_point: f64,
    dos: f64,
    cumulative_states: f64,
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::TcSweep {
            eta_min,
            eta_max,
            steps,
            u0,
            n,
            output,
        } => {
            let table = sweep::tc_sweep(&SweepSpec {
                eta_min,
                eta_max,
                steps,
                u0_values: u0,
                n_particles: n,
            })?;
            emit_sweep(&output, &table)
        }
        Command::Fig1 {
            u0,
            n,
            steps,
            output,
        } => {
            let table = sweep::fig1_data(&u0, n, steps)?;
            emit_sweep(&output, &table)
        }
        Command::MuSolve { gas, temps, output } => {
            let gas = gas.gas()?;
            let tc = thermo::critical_temperature(&gas)?;
            let rows = temps
                .iter()
                .map(|&t| {
                    let p = thermo::thermo_point(&gas, t)?;
                    Ok(MuRow {
                        temperature: t,
                        tc,
                        mu: p.chemical_potential,
                        excited_count: p.excited_count,
                        condensate_count: p.condensate_count,
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let csv: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.temperature,
                        r.tc,
                        r.mu,
                        r.excited_count,
                        r.condensate_count,
                    ]
                })
                .collect();
            output.emit(
                &[
                    "temperature",
                    "tc",
                    "mu",
                    "excited_count",
                    "condensate_count",
                ],
                &csv,
                &rows,
            )
        }
        Command::Condensate { gas, temps, output } => {
            let gas = gas.gas()?;
            let tc = thermo::critical_temperature(&gas)?;
            let rows = temps
                .iter()
                .map(|&t| {
                    Ok(CondensateRow {
                        temperature: t,
                        tc,
                        condensate_fraction: thermo::condensate_fraction(&gas, t)?,
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let csv: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| vec![r.temperature, r.tc, r.condensate_fraction])
                .collect();
            output.emit(&["temperature", "tc", "condensate_fraction"], &csv, &rows)
        }
        Command::Dos {
            eta,
            u0,
            energies,
            output,
        } => {
            let trap = Trap1D::reduced(eta, u0)?;
            let rows = energies
                .iter()
                .map(|&e| {
                    Ok(DosRow {
                        energy: e,
                        turning_point: trap.turning_point(e)?,
                        dos: trap.dos(e)?,
                        cumulative_states: trap.cumulative_states(e)?,
                    })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            let csv: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| vec![r.energy, r.turning_point, r.dos, r.cumulative_states])
                .collect();
            output.emit(
                &["energy", "turning_point", "dos", "cumulative_states"],
                &csv,
                &rows,
            )
        }
        Command::OracleCompare { gas, temps, output } => {
            let gas = gas.gas()?;
            let rows = sweep::oracle_compare(&gas.trap, gas.n_particles(), &temps)?;
            let csv: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| vec![r.temperature, r.mu, r.continuum, r.discrete, r.rel_diff])
                .collect();
            output.emit(
                &["temperature", "mu", "continuum", "discrete", "rel_diff"],
                &csv,
                &rows,
            )
        }
    }
}
