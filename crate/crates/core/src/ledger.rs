//! Dimension bookkeeping for the moduli components of degree-6 genus-4
//! curves: bases, projective-bundle strata, the stable-pair and Hilbert
//! component tables, the chamber sequence and the destabilized loci.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homalg::{ext_dataset, Direction, WallId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "arg")]
pub enum BaseSpace {
    Point,
    /// Lines in P^3.
    Gr24,
    /// Planes in P^3.
    DualP3,
    /// Quadric surfaces, `|O(2)|`.
    QuadricsP9,
    /// Pointed lines.
    UnivLine,
    /// Lines with two marked points, `U ×_Gr U`. Its dimension is not given
    /// independently; 6 is what a 28-dimensional `P^19`-bundle over it times
    /// the dual P^3 requires.
    UnivLineFiber2,
    /// `Z_l ⊂ P ⊂ P^3` with `P` a plane and `Z_l` of length `l`.
    Flag(u32),
    /// `Hilb^{2t+1}`, plane conics.
    HilbConics,
    /// Quintics in a fixed plane.
    PlaneQuintics,
    /// Sextics in a fixed plane.
    PlaneSextics,
    /// `k` unordered points of P^3.
    PointsP3(u32),
    Product(Vec<BaseSpace>),
}

impl BaseSpace {
    pub fn dim(&self) -> i64 {
        match self {
            BaseSpace::Point => 0,
            BaseSpace::Gr24 => 4,
            BaseSpace::DualP3 => 3,
            BaseSpace::QuadricsP9 => 9,
            BaseSpace::UnivLine => 5,
            BaseSpace::UnivLineFiber2 => 6,
            BaseSpace::Flag(l) => 3 + 2 * i64::from(*l),
            BaseSpace::HilbConics => 8,
            BaseSpace::PlaneQuintics => 20,
            BaseSpace::PlaneSextics => 27,
            BaseSpace::PointsP3(k) => 3 * i64::from(*k),
            BaseSpace::Product(fs) => fs.iter().map(BaseSpace::dim).sum(),
        }
    }

    pub fn product(factors: impl IntoIterator<Item = BaseSpace>) -> Self {
        BaseSpace::Product(factors.into_iter().collect())
    }
}

impl fmt::Display for BaseSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpace::Point => f.write_str("Point"),
            BaseSpace::Gr24 => f.write_str("Gr24"),
            BaseSpace::DualP3 => f.write_str("DualP3"),
            BaseSpace::QuadricsP9 => f.write_str("QuadricsP9"),
            BaseSpace::UnivLine => f.write_str("UnivLine"),
            BaseSpace::UnivLineFiber2 => f.write_str("UnivLineFiber2"),
            BaseSpace::Flag(l) => write!(f, "Flag({l})"),
            BaseSpace::HilbConics => f.write_str("HilbConics"),
            BaseSpace::PlaneQuintics => f.write_str("PlaneQuintics"),
            BaseSpace::PlaneSextics => f.write_str("PlaneSextics"),
            BaseSpace::PointsP3(k) => write!(f, "PointsP3({k})"),
            BaseSpace::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join(" x "))
            }
        }
    }
}

fn parse_arg(token: &str, name: &str) -> Option<Result<u32>> {
    let inner = token
        .strip_prefix(name)?
        .strip_prefix('(')?
        .strip_suffix(')')?;
    Some(
        inner
            .trim()
            .parse()
            .map_err(|_| Error::parse(token, "expected a non-negative integer argument")),
    )
}

impl FromStr for BaseSpace {
    type Err = Error;

    /// Names as printed by `Display`; products are joined with ` x `.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(" x ").map(str::trim).collect();
        if parts.len() > 1 {
            return parts
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>>>()
                .map(BaseSpace::Product);
        }
        let t = parts[0];
        if let Some(l) = parse_arg(t, "Flag") {
            return l.map(BaseSpace::Flag);
        }
        if let Some(k) = parse_arg(t, "PointsP3") {
            return k.map(BaseSpace::PointsP3);
        }
        Ok(match t {
            "Point" => BaseSpace::Point,
            "Gr24" => BaseSpace::Gr24,
            "DualP3" => BaseSpace::DualP3,
            "QuadricsP9" => BaseSpace::QuadricsP9,
            "UnivLine" => BaseSpace::UnivLine,
            "UnivLineFiber2" => BaseSpace::UnivLineFiber2,
            "HilbConics" => BaseSpace::HilbConics,
            "PlaneQuintics" => BaseSpace::PlaneQuintics,
            "PlaneSextics" => BaseSpace::PlaneSextics,
            _ => return Err(Error::domain(format!("unknown base space `{t}`"))),
        })
    }
}

/// Dimension of a base given by name, e.g. `Flag(2)` or `Gr24 x Flag(1)`.
pub fn base_space_dim(kind: &str) -> Result<i64> {
    Ok(kind.parse::<BaseSpace>()?.dim())
}

/// `P(Ext¹)`-bundle over `base`: `ext1_dim - 1 + dim base`, or `None` when
/// there are no extensions.
pub fn stratum_dim(ext1_dim: u64, base: &BaseSpace) -> Option<i64> {
    let e = i64::try_from(ext1_dim).ok()?;
    (e >= 1).then(|| e - 1 + base.dim())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Pt,
    Hilb,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pt" => Ok(Side::Pt),
            "hilb" => Ok(Side::Hilb),
            _ => Err(Error::parse(s, "expected pt or hilb")),
        }
    }
}

/// Whether a dimension is proved or only conjectured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Stated,
    Expected,
}

/// The Ext¹ stratum whose projectivization is the fiber of a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtLink {
    pub wall: WallId,
    pub stratum: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub name: &'static str,
    /// `-1` when the component is not described as a bundle.
    pub fiber_dim: i64,
    pub base: Option<BaseSpace>,
    pub total_dim: i64,
    pub side: Side,
    pub description: &'static str,
    pub provenance: Provenance,
    pub ext_link: Option<ExtLink>,
}

impl ComponentRecord {
    /// `fiber + dim base`, or the base alone for non-bundle records.
    pub fn recomputed_total(&self) -> Option<i64> {
        let base = self.base.as_ref()?.dim();
        Some(if self.fiber_dim >= 0 {
            self.fiber_dim + base
        } else {
            base
        })
    }
}

fn bundle(
    name: &'static str,
    fiber_dim: i64,
    base: BaseSpace,
    side: Side,
    description: &'static str,
    ext_link: Option<(WallId, &'static str)>,
) -> ComponentRecord {
    ComponentRecord {
        name,
        fiber_dim,
        total_dim: fiber_dim + base.dim(),
        base: Some(base),
        side,
        description,
        provenance: Provenance::Stated,
        ext_link: ext_link.map(|(wall, stratum)| ExtLink { wall, stratum }),
    }
}

/// Components of the moduli space of stable pairs with `ch(F) = (0,0,6,-15)`.
pub fn pt_component_table() -> Vec<ComponentRecord> {
    use BaseSpace::*;
    vec![
        bundle(
            "PT1",
            15,
            QuadricsP9,
            Side::Pt,
            "(2,3) complete intersections",
            None,
        ),
        bundle(
            "PT2",
            17,
            BaseSpace::product([Gr24, Flag(2)]),
            Side::Pt,
            "line meeting a plane quintic, two points on the quintic",
            Some((WallId::Purple1, "all")),
        ),
        bundle(
            "PT3",
            18,
            BaseSpace::product([UnivLine, Flag(1)]),
            Side::Pt,
            "pointed line meeting a plane quintic, one point on the quintic",
            Some((WallId::Purple2, "not_in_P")),
        ),
        bundle(
            "PT4",
            19,
            BaseSpace::product([Gr24, Flag(1)]),
            Side::Pt,
            "line disjoint from a plane quintic, one point on the quintic",
            Some((WallId::Purple2, "in_P_not_Z1")),
        ),
        bundle(
            "PT5",
            19,
            BaseSpace::product([UnivLineFiber2, DualP3]),
            Side::Pt,
            "line with two points, meeting a plane quintic",
            Some((WallId::Purple3, "otherwise")),
        ),
        bundle(
            "PT6",
            20,
            BaseSpace::product([UnivLine, DualP3]),
            Side::Pt,
            "pointed line disjoint from a plane quintic",
            Some((WallId::Purple3, "zero_contains_intersection")),
        ),
        bundle(
            "PT7",
            21,
            Flag(2),
            Side::Pt,
            "plane quartic with a thickened line in its plane",
            Some((WallId::Purple3, "L_in_P")),
        ),
        bundle(
            "PT8",
            21,
            Flag(6),
            Side::Pt,
            "plane sextic with six points on it",
            Some((WallId::Pink, "all")),
        ),
    ]
}

/// Components of `Hilb^{6t-3}(P^3)`.
pub fn hilb_component_table() -> Vec<ComponentRecord> {
    use BaseSpace::*;
    vec![
        bundle(
            "H_CM",
            15,
            QuadricsP9,
            Side::Hilb,
            "main component, (2,3) complete intersections",
            None,
        ),
        bundle(
            "H'_CM",
            21,
            Flag(2),
            Side::Hilb,
            "plane quartic with a thickened line in its plane",
            None,
        ),
        ComponentRecord {
            name: "H_1",
            fiber_dim: -1,
            base: Some(BaseSpace::product([
                Gr24,
                DualP3,
                PlaneQuintics,
                PointsP3(1),
            ])),
            total_dim: 30,
            side: Side::Hilb,
            description: "line disjoint from a plane quintic, one floating point",
            provenance: Provenance::Stated,
            ext_link: None,
        },
        ComponentRecord {
            name: "H_2",
            fiber_dim: -1,
            base: None,
            total_dim: 32,
            side: Side::Hilb,
            description: "line and a plane quintic, two floating points",
            provenance: Provenance::Expected,
            ext_link: None,
        },
        ComponentRecord {
            name: "H_6",
            fiber_dim: -1,
            base: Some(BaseSpace::product([DualP3, PlaneSextics, PointsP3(6)])),
            total_dim: 48,
            side: Side::Hilb,
            description: "plane sextic with six floating points",
            provenance: Provenance::Expected,
            ext_link: None,
        },
    ]
}

pub fn component_table(side: Side) -> Vec<ComponentRecord> {
    match side {
        Side::Pt => pt_component_table(),
        Side::Hilb => hilb_component_table(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub name: &'static str,
    pub components: u32,
}

/// Chambers from the empty space to the stable-pair chamber.
pub fn chamber_sequence() -> Vec<Chamber> {
    [
        ("N0", 0),
        ("N1", 1),
        ("N2", 1),
        ("N3", 2),
        ("N4", 4),
        ("N5", 7),
        ("N6", 8),
    ]
    .into_iter()
    .map(|(name, components)| Chamber { name, components })
    .collect()
}

/// A destabilized stratum; `bundle` is `(fiber, base)` when it is stated as
/// a projective bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocusStratum {
    pub dim: i64,
    pub bundle: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DestabLoci {
    pub chamber: &'static str,
    pub strata: Vec<LocusStratum>,
}

/// Loci of each chamber destabilized at the next wall.
pub fn destab_loci_table() -> Vec<DestabLoci> {
    let plain = |d| LocusStratum {
        dim: d,
        bundle: None,
    };
    let bundled = |f, b| LocusStratum {
        dim: f + b,
        bundle: Some((f, b)),
    };
    vec![
        DestabLoci {
            chamber: "N1",
            strata: vec![plain(11)],
        },
        DestabLoci {
            chamber: "N2",
            strata: vec![plain(11), plain(8)],
        },
        DestabLoci {
            chamber: "N3",
            strata: vec![plain(9), plain(8)],
        },
        DestabLoci {
            chamber: "N4",
            strata: vec![plain(8), plain(8)],
        },
        DestabLoci {
            chamber: "N5",
            strata: vec![plain(14), bundled(1, 12), bundled(2, 11)],
        },
    ]
}

/// Records whose `fiber + 1` disagrees with the linked generic `Ext¹(B, A)`.
pub fn ext_link_mismatches(records: &[ComponentRecord]) -> Vec<&'static str> {
    let data = ext_dataset();
    records
        .iter()
        .filter_map(|r| {
            let link = r.ext_link.as_ref()?;
            let dim = data
                .wall(link.wall)
                .entries()
                .into_iter()
                .find(|e| e.direction == Direction::BA && e.stratum == link.stratum)
                .map(|e| i64::from(e.dim));
            (dim != Some(r.fiber_dim + 1)).then_some(r.name)
        })
        .collect()
}
