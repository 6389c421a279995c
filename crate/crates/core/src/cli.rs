//! `wallscope` command line.
//!
//! [`run`] is the whole program minus process I/O, so tests can drive it
//! in-process. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::chern::Char3;
use crate::destab::{
    dtpt_splittings, enumerate_destab_pairs_with, genus_bound, truncated_wall_candidates,
    EnumBounds,
};
use crate::error::Error;
use crate::homalg::{
    curated_ext_table, euler_pairing, ext_dataset, points_plane_cohomology, ExtTableEntry,
    PointConfig, Position, WallId,
};
use crate::ledger::{chamber_sequence, component_table, destab_loci_table, Side};
use crate::rational::{fmt_q, parse_q, Q};
use crate::walls::{hyperbola_locus, render_svg, View};

#[derive(Debug, Parser)]
#[command(
    name = "wallscope",
    version,
    about = "Tilt-stability walls and moduli bookkeeping on P^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CharArg {
    /// Chern character `r,c,d,e`, entries `p` or `p/q`.
    #[arg(long = "char", value_parser = parse_char, allow_hyphen_values = true)]
    ch: Char3,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    rank_min: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    rank_max: i64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Circular walls of a rank-one class.
    Walls {
        #[command(flatten)]
        ch: CharArg,
        #[command(flatten)]
        ranks: RankArgs,
        #[arg(long)]
        json: bool,
    },
    /// The curve Im Z = 0.
    Hyperbola {
        #[command(flatten)]
        ch: CharArg,
        #[arg(long)]
        json: bool,
    },
    /// Destabilizing pairs, wall by wall.
    Destab {
        #[command(flatten)]
        ch: CharArg,
        #[command(flatten)]
        ranks: RankArgs,
        #[arg(long)]
        json: bool,
    },
    /// Ideal-plus-torsion splittings across Im Z = 0.
    Dtpt {
        #[command(flatten)]
        ch: CharArg,
        #[arg(long)]
        json: bool,
    },
    /// Euler pairing χ(E, F).
    Euler {
        #[arg(long, value_parser = parse_char, allow_hyphen_values = true)]
        e: Char3,
        #[arg(long, value_parser = parse_char, allow_hyphen_values = true)]
        f: Char3,
        #[arg(long)]
        json: bool,
    },
    /// Curated Ext¹ tables.
    Ext {
        /// green, purple1, purple2, purple3 or pink; all walls when omitted.
        #[arg(long)]
        wall: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// h^0 and h^1 of I_Z(d) for points in a plane.
    Points {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_position)]
        pos: Position,
        #[arg(long)]
        deg: u32,
        #[arg(long)]
        json: bool,
    },
    /// Moduli component table.
    Components {
        #[arg(long, value_parser = parse_side, default_value = "pt")]
        side: Side,
        #[arg(long)]
        json: bool,
    },
    /// Chamber sequence and destabilized loci.
    Chambers {
        #[arg(long)]
        json: bool,
    },
    /// SVG picture of the walls and the hyperbola.
    Plot {
        #[command(flatten)]
        ch: CharArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, value_parser = parse_rational, default_value = "4/5")]
        s: Q,
        #[arg(long, default_value_t = -14.0, allow_hyphen_values = true)]
        beta_min: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta_max: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 7.0, allow_hyphen_values = true)]
        alpha_max: f64,
        #[arg(long)]
        json: bool,
    },
    /// Maximal arithmetic genus of a degree-d space curve.
    GenusBound {
        #[arg(long)]
        deg: i64,
        /// Allow plane curves.
        #[arg(long)]
        planar: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_char(s: &str) -> Result<Char3, String> {
    s.parse::<Char3>().map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

fn parse_position(s: &str) -> Result<Position, String> {
    s.parse::<Position>().map_err(|e| e.to_string())
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse::<Side>().map_err(|e| e.to_string())
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(e: &Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::Domain(_) | Error::UnsupportedRegime(_) => 1,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parse `args` (program name first) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::err(&e),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn bounds(v: &Char3, r: &RankArgs) -> EnumBounds {
    EnumBounds::for_class(v).with_ranks(r.rank_min, r.rank_max)
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn ext_rows(entries: &[ExtTableEntry]) -> Vec<Vec<String>> {
    entries
        .iter()
        .map(|e| {
            vec![
                e.wall_id.to_string(),
                format!("{:?}", e.direction),
                e.stratum.clone(),
                e.dim.to_string(),
                if e.generic { "yes".into() } else { "no".into() },
            ]
        })
        .collect()
}

fn dispatch(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::Walls { ch, ranks, json: _ } => {
            let cands = truncated_wall_candidates(&ch.ch, &bounds(&ch.ch, &ranks))?;
            let rows: Vec<_> = cands
                .iter()
                .map(|c| {
                    json!({
                        "center": fmt_q(c.center()),
                        "radius_sq": fmt_q(c.radius_sq()),
                        "sub": c.sub.iter().map(fmt_q).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(to_json(&rows))
        }
        Command::Hyperbola { ch, json: _ } => {
            let h = hyperbola_locus(&ch.ch);
            Ok(to_json(&json!({
                "a": fmt_q(&h.a),
                "b": fmt_q(&h.b),
                "c": fmt_q(&h.c),
                "equation": h.equation(),
            })))
        }
        Command::Destab { ch, ranks, json } => {
            let pairs = enumerate_destab_pairs_with(&ch.ch, &bounds(&ch.ch, &ranks))?;
            if json {
                return Ok(to_json(&pairs));
            }
            let rows: Vec<Vec<String>> = pairs
                .iter()
                .map(|p| {
                    let (c, r2) = p.wall.as_circle().expect("circle");
                    vec![
                        fmt_q(c),
                        fmt_q(r2),
                        p.sub.to_string(),
                        p.quot.to_string(),
                        p.side_note.clone(),
                        p.annotations.left.clone(),
                        p.annotations.right.clone().unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            Ok(table(
                &[
                    "center",
                    "radius_sq",
                    "sub",
                    "quot",
                    "side",
                    "left",
                    "right",
                ],
                &rows,
            ))
        }
        Command::Dtpt { ch, json } => {
            let s = dtpt_splittings(&ch.ch)?;
            if json {
                return Ok(to_json(&s));
            }
            let rows: Vec<Vec<String>> = s
                .iter()
                .map(|sp| vec![sp.torsion_length.to_string(), sp.ideal.to_string()])
                .collect();
            Ok(table(&["length", "ideal"], &rows))
        }
        Command::Euler { e, f, json } => {
            let chi = fmt_q(&euler_pairing(&e, &f));
            Ok(if json {
                to_json(&chi)
            } else {
                format!("{chi}\n")
            })
        }
        Command::Ext { wall, json } => {
            let entries = match wall {
                Some(w) => curated_ext_table(&w)?,
                None => WallId::ALL
                    .iter()
                    .flat_map(|w| ext_dataset().wall(*w).entries())
                    .collect(),
            };
            if json {
                return Ok(to_json(&json!({
                    "version": ext_dataset().version,
                    "entries": entries,
                })));
            }
            Ok(table(
                &["wall", "dir", "stratum", "dim", "generic"],
                &ext_rows(&entries),
            ))
        }
        Command::Points {
            n,
            pos,
            deg,
            json: _,
        } => {
            let cfg = PointConfig::new(n, pos)?;
            Ok(to_json(&points_plane_cohomology(&cfg, deg)))
        }
        Command::Components { side, json } => {
            let recs = component_table(side);
            if json {
                return Ok(to_json(&recs));
            }
            let rows: Vec<Vec<String>> = recs
                .iter()
                .map(|r| {
                    vec![
                        r.name.to_string(),
                        if r.fiber_dim >= 0 {
                            r.fiber_dim.to_string()
                        } else {
                            "-".into()
                        },
                        r.base
                            .as_ref()
                            .map_or_else(|| "-".into(), ToString::to_string),
                        r.base
                            .as_ref()
                            .map_or_else(|| "-".into(), |b| b.dim().to_string()),
                        r.total_dim.to_string(),
                        format!("{:?}", r.provenance).to_lowercase(),
                        r.description.to_string(),
                    ]
                })
                .collect();
            Ok(table(
                &[
                    "name",
                    "fiber",
                    "base",
                    "base_dim",
                    "total",
                    "provenance",
                    "description",
                ],
                &rows,
            ))
        }
        Command::Chambers { json } => {
            let chambers = chamber_sequence();
            let loci = destab_loci_table();
            if json {
                return Ok(to_json(
                    &json!({ "chambers": chambers, "destab_loci": loci }),
                ));
            }
            let rows: Vec<Vec<String>> = chambers
                .iter()
                .map(|c| {
                    let strata = loci
                        .iter()
                        .find(|l| l.chamber == c.name)
                        .map(|l| {
                            l.strata
                                .iter()
                                .map(|s| match s.bundle {
                                    Some((f, b)) => format!("{} ({f}+{b})", s.dim),
                                    None => s.dim.to_string(),
                                })
                                .collect::<Vec<_>>()
                                .join(", ")
                        })
                        .unwrap_or_else(|| "-".into());
                    vec![c.name.to_string(), c.components.to_string(), strata]
                })
                .collect();
            Ok(table(&["chamber", "components", "destabilized"], &rows))
        }
        Command::Plot {
            ch,
            out,
            samples,
            s,
            beta_min,
            beta_max,
            alpha_min,
            alpha_max,
            json,
        } => {
            let view = View {
                beta_min,
                beta_max,
                alpha_min,
                alpha_max,
            };
            let cands = truncated_wall_candidates(&ch.ch, &EnumBounds::for_class(&ch.ch))?;
            let walls: Vec<_> = cands.into_iter().map(|c| c.wall).collect();
            let svg = render_svg(&walls, &hyperbola_locus(&ch.ch), &view, samples, &s)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &svg).map_err(|e| {
                        Error::Domain(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(if json {
                        to_json(&json!({ "out": path.display().to_string(), "walls": walls.len() }))
                    } else {
                        String::new()
                    })
                }
                None if json => Ok(to_json(&json!({ "walls": walls.len(), "svg": svg }))),
                None => Ok(svg),
            }
        }
        Command::GenusBound {
            deg,
            planar,
            json: _,
        } => Ok(format!("{}\n", genus_bound(deg, planar)?)),
    }
}
