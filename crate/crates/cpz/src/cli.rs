//! Command-line front end: conversions, set operations, witness sampling,
//! regularization, the nonlinear-map demo, and set inspection.
//!
//! Exit codes: 0 on success, 1 for validation and shape errors, 2 for I/O
//! errors (the mapping lives in `main`).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::linalg::DenseMatrix;
use crate::oracle::{
    point_cloud, sample_witnesses, sample_witnesses_seq, union_lift_first, union_lift_second,
    WitnessSampleConfig,
};
use crate::setfile::{load, save, write_points, MatrixData, SetFile};
use crate::sets::{ConPolyZonotope, FactorAssignment};
use crate::{CpzError, Result, WITNESS_TOL};

#[derive(Parser)]
#[command(name = "cpz", version, about = "Constrained polynomial zonotope toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Convert any supported set file into CPZ form.
    Convert {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Apply a set operation and write the resulting CPZ.
    Op {
        #[command(subcommand)]
        op: OpCommand,
    },
    /// Sample constraint-satisfying points and write them as CSV.
    Sample {
        input: PathBuf,
        /// Number of uniform proposals to draw.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Raw-residual threshold above which a proposal is discarded
        /// without polishing.
        #[arg(long, default_value_t = 1e-2)]
        reject_tol: f64,
        #[arg(long, default_value_t = 25)]
        polish_steps: usize,
        /// Force the sequential sampler.
        #[arg(long)]
        sequential: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Merge duplicate exponent columns and fold constant terms.
    Regularize {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Built-in demonstrations.
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
    /// Print the dimensions, representation size, and regularity of a set.
    Info { input: PathBuf },
}

#[derive(Subcommand)]
pub enum OpCommand {
    /// Linear map; the matrix file holds `{rows, cols, data}`.
    Linmap {
        input: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    Minksum {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    Cartprod {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    Convhull {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Quadratic map; pass one `--matrix` per output dimension.
    Quadmap {
        input: PathBuf,
        #[arg(long = "matrix", required = true)]
        matrices: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    Intersect {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    Union {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum DemoCommand {
    /// Nonlinear map of a box split along a parabola: writes the two regions,
    /// their images, the exact union of the images, and a point cloud for
    /// each (CSV).
    Fig3 {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn load_cpz(path: &Path) -> Result<ConPolyZonotope> {
    load(path)?.to_cpz()
}

fn save_cpz(path: &Path, s: &ConPolyZonotope) -> Result<()> {
    save(path, &SetFile::from_cpz(s))
}

fn load_matrix(path: &Path) -> Result<DenseMatrix> {
    let text = std::fs::read_to_string(path)?;
    let m: MatrixData = serde_json::from_str(&text).map_err(|e| {
        CpzError::Validation(format!("cannot parse matrix file {}: {e}", path.display()))
    })?;
    DenseMatrix::new(m.rows, m.cols, m.data)
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Convert { input, output } => save_cpz(output, &load_cpz(input)?),
        Command::Op { op } => run_op(op),
        Command::Sample {
            input,
            count,
            seed,
            reject_tol,
            polish_steps,
            sequential,
            output,
        } => {
            let s = load_cpz(input)?;
            let cfg = WitnessSampleConfig {
                draws: *count,
                reject_tol: *reject_tol,
                polish_steps: *polish_steps,
                seed: *seed,
            };
            let witnesses = if *sequential {
                sample_witnesses_seq(&s, &cfg)
            } else {
                sample_witnesses(&s, &cfg)
            };
            let points: Vec<_> = witnesses
                .iter()
                .map(|w| s.eval_point(w))
                .collect::<Result<_>>()?;
            write_points(output, &points)?;
            println!("accepted={} of {}", points.len(), cfg.draws);
            Ok(())
        }
        Command::Regularize { input, output } => {
            save_cpz(output, &crate::regularize::compact(&load_cpz(input)?))
        }
        Command::Demo {
            which: DemoCommand::Fig3 { out_dir },
        } => run_demo_fig3(out_dir),
        Command::Info { input } => {
            let s = load_cpz(input)?;
            println!(
                "n={} p={} h={} m={} q={} size={} regular={}",
                s.dim(),
                s.num_factors(),
                s.num_generators(),
                s.num_constraints(),
                s.num_constraint_generators(),
                s.representation_size(),
                s.is_regular()
            );
            Ok(())
        }
    }
}

fn run_op(op: &OpCommand) -> Result<()> {
    match op {
        OpCommand::Linmap {
            input,
            matrix,
            output,
        } => save_cpz(
            output,
            &crate::ops::linear_map(&load_matrix(matrix)?, &load_cpz(input)?)?,
        ),
        OpCommand::Minksum {
            first,
            second,
            output,
        } => save_cpz(
            output,
            &crate::ops::minkowski_sum(&load_cpz(first)?, &load_cpz(second)?)?,
        ),
        OpCommand::Cartprod {
            first,
            second,
            output,
        } => save_cpz(
            output,
            &crate::ops::cartesian_product(&load_cpz(first)?, &load_cpz(second)?)?,
        ),
        OpCommand::Convhull {
            first,
            second,
            output,
        } => save_cpz(
            output,
            &crate::ops::convex_hull(&load_cpz(first)?, &load_cpz(second)?)?,
        ),
        OpCommand::Quadmap {
            input,
            matrices,
            output,
        } => {
            let qs: Vec<DenseMatrix> = matrices
                .iter()
                .map(|p| load_matrix(p))
                .collect::<Result<_>>()?;
            save_cpz(output, &crate::ops::quadratic_map(&qs, &load_cpz(input)?)?)
        }
        OpCommand::Intersect {
            first,
            second,
            output,
        } => save_cpz(
            output,
            &crate::ops::intersect(&load_cpz(first)?, &load_cpz(second)?)?,
        ),
        OpCommand::Union {
            first,
            second,
            output,
        } => save_cpz(
            output,
            &crate::ops::union(&load_cpz(first)?, &load_cpz(second)?)?,
        ),
    }
}

/// Extend a domain witness with zeros for an image set's extra factors.
fn pad_factors(w: &FactorAssignment, target: usize) -> FactorAssignment {
    let mut v = w.values().to_vec();
    v.resize(target, 0.0);
    FactorAssignment::from_slice(&v).expect("zeros are in bounds")
}

fn run_demo_fig3(out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let demo = crate::enclosure::demo_nonlinear_map()?;

    for (name, set) in [
        ("region_above", &demo.region_above),
        ("region_below", &demo.region_below),
        ("image_above", &demo.image_above),
        ("image_below", &demo.image_below),
        ("union", &demo.union_image),
    ] {
        save_cpz(&out_dir.join(format!("{name}.json")), set)?;
    }

    // Point clouds. The regions are unconstrained, so uniform factor draws
    // are already witnesses; image and union points come from lifting those
    // witnesses (image factors padded with zeros, union selectors at +-1),
    // and every lifted assignment is re-checked against the constraints.
    let cfg = WitnessSampleConfig {
        draws: 10_000,
        seed: 7,
        ..Default::default()
    };
    let above_ws = sample_witnesses(&demo.region_above, &cfg);
    let below_ws = sample_witnesses(
        &demo.region_below,
        &WitnessSampleConfig { seed: 8, ..cfg.clone() },
    );
    write_points(
        &out_dir.join("region_above.csv"),
        &point_cloud(&demo.region_above, &cfg),
    )?;
    write_points(
        &out_dir.join("region_below.csv"),
        &point_cloud(
            &demo.region_below,
            &WitnessSampleConfig { seed: 8, ..cfg.clone() },
        ),
    )?;

    let mut image_above_pts = Vec::new();
    let mut image_below_pts = Vec::new();
    let mut union_pts = Vec::new();
    for (ws, image, first) in [
        (&above_ws, &demo.image_above, true),
        (&below_ws, &demo.image_below, false),
    ] {
        for w in ws {
            let lifted = pad_factors(w, image.num_factors());
            if image.constraint_residual(&lifted)?.inf_norm() > WITNESS_TOL {
                return Err(CpzError::Validation(
                    "lifted image witness violates constraints".into(),
                ));
            }
            let pt = image.eval_point(&lifted)?;
            let union_lift = if first {
                union_lift_first(&demo.image_above, &demo.image_below, &lifted)
            } else {
                union_lift_second(&demo.image_above, &demo.image_below, &lifted)
            };
            if demo.union_image.constraint_residual(&union_lift)?.inf_norm() > WITNESS_TOL {
                return Err(CpzError::Validation(
                    "lifted union witness violates constraints".into(),
                ));
            }
            union_pts.push(demo.union_image.eval_point(&union_lift)?);
            if first {
                image_above_pts.push(pt);
            } else {
                image_below_pts.push(pt);
            }
        }
    }
    write_points(&out_dir.join("image_above.csv"), &image_above_pts)?;
    write_points(&out_dir.join("image_below.csv"), &image_below_pts)?;
    write_points(&out_dir.join("union.csv"), &union_pts)?;
    println!(
        "wrote 5 set files and 5 point clouds to {}",
        out_dir.display()
    );
    Ok(())
}
