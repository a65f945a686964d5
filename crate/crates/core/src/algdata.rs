//! Dimension data for simple algebraic groups: the largest classes of
//! elements of orders 2 and 3 in exceptional types, and the dimension
//! inequalities a generating class pair must satisfy.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A simple algebraic group type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgGroupType {
    G2,
    F4,
    E6,
    E7,
    E8,
    A(u32),
    B(u32),
    C(u32),
    D(u32),
}

impl AlgGroupType {
    /// Validates the rank of a classical type.
    pub fn checked(self) -> Result<Self> {
        let ok = match self {
            AlgGroupType::A(n) => n >= 1,
            AlgGroupType::B(n) | AlgGroupType::C(n) => n >= 2,
            AlgGroupType::D(n) => n >= 4,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::invalid(format!("rank too small for {self}")))
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            AlgGroupType::G2 => 2,
            AlgGroupType::F4 => 4,
            AlgGroupType::E6 => 6,
            AlgGroupType::E7 => 7,
            AlgGroupType::E8 => 8,
            AlgGroupType::A(n) | AlgGroupType::B(n) | AlgGroupType::C(n) | AlgGroupType::D(n) => n,
        }
    }

    pub fn dim(self) -> u64 {
        match self {
            AlgGroupType::G2 => 14,
            AlgGroupType::F4 => 52,
            AlgGroupType::E6 => 78,
            AlgGroupType::E7 => 133,
            AlgGroupType::E8 => 248,
            AlgGroupType::A(n) => n as u64 * (n as u64 + 2),
            AlgGroupType::B(n) | AlgGroupType::C(n) => n as u64 * (2 * n as u64 + 1),
            AlgGroupType::D(n) => n as u64 * (2 * n as u64 - 1),
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(
            self,
            AlgGroupType::G2
                | AlgGroupType::F4
                | AlgGroupType::E6
                | AlgGroupType::E7
                | AlgGroupType::E8
        )
    }

    pub const EXCEPTIONAL: [AlgGroupType; 5] = [
        AlgGroupType::E8,
        AlgGroupType::E7,
        AlgGroupType::E6,
        AlgGroupType::F4,
        AlgGroupType::G2,
    ];
}

impl fmt::Display for AlgGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgGroupType::G2 => f.write_str("G2"),
            AlgGroupType::F4 => f.write_str("F4"),
            AlgGroupType::E6 => f.write_str("E6"),
            AlgGroupType::E7 => f.write_str("E7"),
            AlgGroupType::E8 => f.write_str("E8"),
            AlgGroupType::A(n) => write!(f, "A{n}"),
            AlgGroupType::B(n) => write!(f, "B{n}"),
            AlgGroupType::C(n) => write!(f, "C{n}"),
            AlgGroupType::D(n) => write!(f, "D{n}"),
        }
    }
}

impl FromStr for AlgGroupType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("unknown group type {s:?}"));
        let s = s.trim();
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: u32 = chars.as_str().parse().map_err(|_| bad())?;
        let g = match (head, n) {
            ('G', 2) => AlgGroupType::G2,
            ('F', 4) => AlgGroupType::F4,
            ('E', 6) => AlgGroupType::E6,
            ('E', 7) => AlgGroupType::E7,
            ('E', 8) => AlgGroupType::E8,
            ('A', n) => AlgGroupType::A(n),
            ('B', n) => AlgGroupType::B(n),
            ('C', n) => AlgGroupType::C(n),
            ('D', n) => AlgGroupType::D(n),
            _ => return Err(bad()),
        };
        g.checked()
    }
}

/// Characteristic case of a table column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharCase {
    P2,
    NotP2,
    P3,
    NotP3,
}

impl CharCase {
    /// The element order the column refers to.
    pub fn order(self) -> u32 {
        match self {
            CharCase::P2 | CharCase::NotP2 => 2,
            CharCase::P3 | CharCase::NotP3 => 3,
        }
    }

    /// True when the class is unipotent (order equals the characteristic).
    pub fn is_unipotent(self) -> bool {
        matches!(self, CharCase::P2 | CharCase::P3)
    }

    /// The column for elements of order `order` in characteristic `p`.
    pub fn for_prime(p: u64, order: u32) -> Result<Self> {
        match order {
            2 => Ok(if p == 2 {
                CharCase::P2
            } else {
                CharCase::NotP2
            }),
            3 => Ok(if p == 3 {
                CharCase::P3
            } else {
                CharCase::NotP3
            }),
            _ => Err(Error::invalid(format!(
                "only orders 2 and 3 are tabulated, not {order}"
            ))),
        }
    }

    pub const ALL: [CharCase; 4] = [CharCase::P2, CharCase::NotP2, CharCase::P3, CharCase::NotP3];
}

impl fmt::Display for CharCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharCase::P2 => "p=2",
            CharCase::NotP2 => "p!=2",
            CharCase::P3 => "p=3",
            CharCase::NotP3 => "p!=3",
        })
    }
}

impl FromStr for CharCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "p=2" => Ok(CharCase::P2),
            "p!=2" => Ok(CharCase::NotP2),
            "p=3" => Ok(CharCase::P3),
            "p!=3" => Ok(CharCase::NotP3),
            _ => Err(Error::parse(format!("unknown characteristic case {s:?}"))),
        }
    }
}

/// A simple factor of a centralizer, or a torus of the given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    A(u64),
    C(u64),
    D(u64),
    T(u64),
}

impl Factor {
    fn dim(self) -> u64 {
        match self {
            Factor::A(n) => n * (n + 2),
            Factor::C(n) => n * (2 * n + 1),
            Factor::D(n) => n * (2 * n - 1),
            Factor::T(n) => n,
        }
    }
}

/// A largest class of elements of order 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub group: AlgGroupType,
    pub case: CharCase,
    pub order: u32,
    /// Unipotent class name, or the centralizer type for semisimple classes;
    /// `~` marks short-root factors.
    pub label: &'static str,
    pub dim: u64,
    /// The class splits into two classes of the finite group.
    pub two_finite_classes: bool,
    centralizer: Option<&'static [Factor]>,
}

impl ClassInfo {
    /// `dim G - dim C_G(x)` for semisimple classes whose centralizer is a
    /// reductive subgroup of maximal rank; `None` for unipotent classes.
    pub fn recomputed_dim(&self) -> Option<u64> {
        let c: u64 = self.centralizer?.iter().map(|f| f.dim()).sum();
        Some(self.group.dim() - c)
    }
}

macro_rules! row {
    ($g:ident, $case:ident, $label:expr, $dim:expr) => {
        ($g, $case, $label, $dim, None, false)
    };
    ($g:ident, $case:ident, $label:expr, $dim:expr, [$($f:expr),*]) => {
        ($g, $case, $label, $dim, Some(&[$($f),*] as &'static [Factor]), false)
    };
}

use AlgGroupType::{E6, E7, E8, F4, G2};
use CharCase::{NotP2, NotP3, P2, P3};
use Factor::{A, C, D, T};

type Row = (
    AlgGroupType,
    CharCase,
    &'static str,
    u64,
    Option<&'static [Factor]>,
    bool,
);

const TABLE: [Row; 20] = [
    row!(E8, P2, "A1^4", 128),
    row!(E8, NotP2, "D8", 128, [D(8)]),
    row!(E8, P3, "A2^2A1^2", 168),
    row!(E8, NotP3, "A8", 168, [A(8)]),
    row!(E7, P2, "A1^4", 70),
    row!(E7, NotP2, "A7", 70, [A(7)]),
    row!(E7, P3, "A2^2A1", 90),
    row!(E7, NotP3, "A5A2", 70, [A(5), A(2)]),
    row!(E6, P2, "A1^3", 40),
    row!(E6, NotP2, "A1A5", 40, [A(1), A(5)]),
    row!(E6, P3, "A2^2A1", 54),
    row!(E6, NotP3, "A2^3", 54, [A(2), A(2), A(2)]),
    row!(F4, P2, "A1~A1", 28),
    row!(F4, NotP2, "A1C3", 28, [A(1), C(3)]),
    row!(F4, P3, "~A2A1", 34),
    row!(F4, NotP3, "A2~A2", 34, [A(2), A(2)]),
    row!(G2, P2, "~A1", 8),
    row!(G2, NotP2, "A1~A1", 8, [A(1), A(1)]),
    (G2, P3, "G2(a1)", 10, None, true),
    row!(G2, NotP3, "A1T1", 10, [A(1), T(1)]),
];

/// All tabulated classes, in table order.
pub fn table1() -> Vec<ClassInfo> {
    TABLE
        .iter()
        .map(|&(group, case, label, dim, centralizer, two)| ClassInfo {
            group,
            case,
            order: case.order(),
            label,
            dim,
            two_finite_classes: two,
            centralizer,
        })
        .collect()
}

/// The largest class of elements of order `order` in the given
/// characteristic case.
pub fn largest_class(g: AlgGroupType, case: CharCase, order: u32) -> Result<ClassInfo> {
    if !g.is_exceptional() {
        return Err(Error::Unsupported(format!(
            "{g}: only exceptional types are tabulated"
        )));
    }
    if case.order() != order {
        return Err(Error::invalid(format!(
            "case {case} concerns elements of order {}, not {order}",
            case.order()
        )));
    }
    Ok(table1()
        .into_iter()
        .find(|c| c.group == g && c.case == case)
        .expect("table covers every case"))
}

fn check_dim(g: AlgGroupType, d: u64) -> Result<()> {
    if d >= g.dim() {
        return Err(Error::invalid(format!(
            "class dimension {d} is not below dim {g} = {}",
            g.dim()
        )));
    }
    Ok(())
}

/// `dim C + dim D > dim G`, necessary for a class pair to contain a pair
/// generating a dense subgroup.
pub fn scott_precondition(g: AlgGroupType, dim_c: u64, dim_d: u64) -> Result<bool> {
    check_dim(g, dim_c)?;
    check_dim(g, dim_d)?;
    Ok(dim_c + dim_d > g.dim())
}

/// Number of trivial composition factors on the Lie algebra to allow for:
/// 2 for `B`, `C`, `D` of even rank in characteristic 2, else 1.
pub fn default_delta(g: AlgGroupType, p: u64) -> u32 {
    match g {
        AlgGroupType::B(n) | AlgGroupType::C(n) | AlgGroupType::D(n) if p == 2 && n % 2 == 0 => 2,
        _ => 1,
    }
}

/// Scott's bound for a pair `x`, `y` with `z = xy` and classes of dimension
/// `dims`. With three dimensions it checks
/// `dim C + dim D + dim Z >= 2 dim G - delta`; with two, `dim Z` is replaced
/// by its maximum `dim G - rank`, giving `dim C + dim D >= dim G + rank - delta`.
pub fn scott_inequality(g: AlgGroupType, dims: &[u64], delta: u32) -> Result<bool> {
    if delta > 2 {
        return Err(Error::invalid(format!(
            "delta must be 0, 1 or 2, not {delta}"
        )));
    }
    for &d in dims {
        check_dim(g, d)?;
    }
    let n = g.dim();
    let r = g.rank() as u64;
    let delta = delta as u64;
    match dims {
        [c, d] => Ok(c + d + delta >= n + r),
        [c, d, z] => {
            if *z > n - r {
                return Err(Error::invalid(format!(
                    "class dimension {z} exceeds dim G - rank = {}",
                    n - r
                )));
            }
            Ok(c + d + z + delta >= 2 * n)
        }
        _ => Err(Error::invalid(format!(
            "expected two or three class dimensions, got {}",
            dims.len()
        ))),
    }
}

/// One line of the recomputation audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub class: ClassInfo,
    pub recomputed: Option<u64>,
}

impl AuditRow {
    /// False only when a recomputed dimension disagrees with the table.
    pub fn matches(&self) -> bool {
        self.recomputed.is_none_or(|d| d == self.class.dim)
    }
}

/// Recomputes semisimple class dimensions from their centralizers. The
/// table stays authoritative; mismatches are only reported.
pub fn audit_table1() -> Vec<AuditRow> {
    table1()
        .into_iter()
        .map(|c| AuditRow {
            recomputed: c.recomputed_dim(),
            class: c,
        })
        .collect()
}
