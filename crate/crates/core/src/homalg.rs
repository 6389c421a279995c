//! Euler pairings on P^3, a cohomology model for points in a plane, and the
//! curated Ext¹ tables of the five walls right of the hyperbola.
//!
//! Hirzebruch-Riemann-Roch on P^3 with `td(P^3) = (1 + H)^4 (H/(1 - e^{-H}))^4`
//! truncated, i.e. `td = (1, 2, 11/6, 1)`, gives
//!
//! ```text
//! χ(E, F) = ∫ ch(E)^∨ ch(F) td = p3 + 2 p2 + (11/6) p1 + p0,
//! ```
//!
//! with `p = dual(ch E) · ch F`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::chern::Char3;
use crate::error::{Error, Result};
use crate::rational::{binomial, q, qf, Q};

/// `(td0, td1, td2, td3)` of P^3.
pub fn todd_p3() -> [Q; 4] {
    [q(1), q(2), qf(11, 6), q(1)]
}

/// `χ(E, F) = Σ (-1)^i dim Ext^i(E, F)`.
pub fn euler_pairing(e: &Char3, f: &Char3) -> Q {
    let p = &e.dual() * f;
    let [t0, t1, t2, t3] = todd_p3();
    p.ch3 * t0 + p.ch2 * t1 + p.ch1 * t2 + p.ch0 * t3
}

/// `max(0, -χ(B, A))`. Equals `dim Ext¹(B, A)` only when Hom, Ext² and Ext³
/// vanish, as they do on the generic strata of the tables below.
pub fn expected_ext1(b: &Char3, a: &Char3) -> i64 {
    let chi = euler_pairing(b, a);
    if chi.is_positive() {
        0
    } else {
        (-chi)
            .to_integer()
            .to_i64()
            .expect("Euler pairing fits in i64")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Generic,
    Collinear,
    OnSmoothConic,
}

impl FromStr for Position {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Position::Generic),
            "collinear" => Ok(Position::Collinear),
            "conic" | "on_smooth_conic" => Ok(Position::OnSmoothConic),
            _ => Err(Error::parse(s, "expected generic, collinear or conic")),
        }
    }
}

/// `n` points in a plane in the given position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PointConfig {
    pub n: u32,
    pub position: Position,
}

impl PointConfig {
    pub fn new(n: u32, position: Position) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a point configuration needs n >= 1"));
        }
        Ok(PointConfig { n, position })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlaneCohomology {
    pub h0: i64,
    pub h1: i64,
}

fn choose2(n: i64) -> i64 {
    binomial(n, 2).to_i64().expect("small binomial")
}

/// `h^0` and `h^1` of `I_Z(d)` on P^2.
///
/// * generic: `max(0, C(d+2,2) - n)`;
/// * collinear: curves containing the line, `C(d+1,2)`, plus the sections
///   not vanishing on it, `max(0, d+1-n)`;
/// * on a smooth conic: likewise with residual `C(d,2)` and `h^0(O_{P^1}(2d)) = 2d+1`.
///
/// `h1 = h0 - (C(d+2,2) - n)` in every case.
pub fn points_plane_cohomology(cfg: &PointConfig, d: u32) -> PlaneCohomology {
    let d = i64::from(d);
    let n = i64::from(cfg.n);
    let expected = choose2(d + 2) - n;
    let h0 = match cfg.position {
        Position::Generic => expected.max(0),
        Position::Collinear => choose2(d + 1) + (d + 1 - n).max(0),
        Position::OnSmoothConic => choose2(d) + (2 * d + 1 - n).max(0),
    };
    PlaneCohomology {
        h0,
        h1: h0 - expected,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallId {
    Green,
    Purple1,
    Purple2,
    Purple3,
    Pink,
}

impl WallId {
    pub const ALL: [WallId; 5] = [
        WallId::Green,
        WallId::Purple1,
        WallId::Purple2,
        WallId::Purple3,
        WallId::Pink,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            WallId::Green => "green",
            WallId::Purple1 => "purple1",
            WallId::Purple2 => "purple2",
            WallId::Purple3 => "purple3",
            WallId::Pink => "pink",
        }
    }
}

impl fmt::Display for WallId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WallId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        WallId::ALL
            .into_iter()
            .find(|w| w.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown wall id `{s}`")))
    }
}

/// `BA` is `Ext¹(B, A)` for the wall `<A, B>`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    BA,
    AB,
    AA,
    BB,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawEntry {
    direction: Direction,
    stratum: String,
    dim: u32,
    generic: bool,
}

/// One wall of the dataset with the characters of its two factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtWall {
    pub wall_id: WallId,
    pub a_label: String,
    pub b_label: String,
    pub a: Char3,
    pub b: Char3,
    entries: Vec<RawEntry>,
}

impl ExtWall {
    pub fn entries(&self) -> Vec<ExtTableEntry> {
        self.entries
            .iter()
            .map(|e| ExtTableEntry {
                wall_id: self.wall_id,
                direction: e.direction,
                stratum: e.stratum.clone(),
                dim: e.dim,
                generic: e.generic,
            })
            .collect()
    }

    /// The generic-stratum value for `dir`.
    pub fn generic(&self, dir: Direction) -> u32 {
        self.entries
            .iter()
            .find(|e| e.direction == dir && e.generic)
            .map(|e| e.dim)
            .expect("every direction has a generic stratum")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTableEntry {
    pub wall_id: WallId,
    pub direction: Direction,
    pub stratum: String,
    pub dim: u32,
    pub generic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDataset {
    pub version: u32,
    pub walls: Vec<ExtWall>,
}

impl ExtDataset {
    pub fn wall(&self, id: WallId) -> &ExtWall {
        self.walls
            .iter()
            .find(|w| w.wall_id == id)
            .expect("dataset covers every wall id")
    }
}

const EXT_TABLES: &str = include_str!("../data/ext_tables.json");

pub fn ext_dataset() -> &'static ExtDataset {
    static DATA: OnceLock<ExtDataset> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(EXT_TABLES).expect("embedded ext tables parse"))
}

/// Stratified Ext¹ table for `wall_id`, most special strata first.
pub fn curated_ext_table(wall_id: &str) -> Result<Vec<ExtTableEntry>> {
    let id: WallId = wall_id.parse()?;
    Ok(ext_dataset().wall(id).entries())
}

/// Internal consistency of the dataset; returns a description of each problem.
///
/// * the generic `BA` value equals `expected_ext1(B, A)`;
/// * within each direction, dims drop by exactly one from stratum to stratum
///   and the last stratum is the generic one;
/// * `sub + quot` is the same class on every wall.
pub fn validate_dataset(data: &ExtDataset) -> Vec<String> {
    let mut issues = Vec::new();
    let mut total: Option<Char3> = None;
    for w in &data.walls {
        let sum = &w.a + &w.b;
        match &total {
            None => total = Some(sum),
            Some(t) if *t != sum => {
                issues.push(format!("{}: a + b = {sum}, expected {t}", w.wall_id))
            }
            _ => {}
        }
        let exp = expected_ext1(&w.b, &w.a);
        if i64::from(w.generic(Direction::BA)) != exp {
            issues.push(format!(
                "{}: generic BA {} but -χ(B,A) = {exp}",
                w.wall_id,
                w.generic(Direction::BA)
            ));
        }
        for dir in [Direction::BA, Direction::AB, Direction::AA, Direction::BB] {
            let col: Vec<&RawEntry> = w.entries.iter().filter(|e| e.direction == dir).collect();
            if col.last().map(|e| e.generic) != Some(true) {
                issues.push(format!(
                    "{}: {dir:?} does not end on its generic stratum",
                    w.wall_id
                ));
            }
            for pair in col.windows(2) {
                if pair[0].dim != pair[1].dim + 1 {
                    issues.push(format!(
                        "{}: {dir:?} {} -> {} is not a unit step",
                        w.wall_id, pair[0].stratum, pair[1].stratum
                    ));
                }
            }
        }
    }
    issues
}

/// `ext¹(E,E) <= ext¹(F,F) + ext¹(G,G) + ext¹(F,G) + ext¹(G,F) - 1`.
pub fn ghs_bound_check(
    ext1_ff: u64,
    ext1_gg: u64,
    ext1_fg: u64,
    ext1_gf: u64,
    ext1_ee: u64,
) -> bool {
    let rhs =
        i128::from(ext1_ff) + i128::from(ext1_gg) + i128::from(ext1_fg) + i128::from(ext1_gf) - 1;
    i128::from(ext1_ee) <= rhs
}
