//! Kodaira fibre bookkeeping for genus-one fibrations in characteristic 2.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::curvegraph::{DynkinType, Family};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FibrationError {
    #[error("cannot parse fibre configuration {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not an affine type with a Kodaira fibre")]
    NotAffine(String),
    #[error("configuration {0} has rank {1} > 8")]
    RankTooLarge(String, u32),
    #[error("{0} does not appear in the conductrix tables")]
    NotInTable(String),
    #[error("conductrix table: {0}")]
    Table(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberKind {
    /// Iₙ, n ≥ 1
    I(u32),
    /// Iₙ*, n ≥ 0
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl FiberKind {
    /// Rank of the root lattice spanned by the non-identity components.
    pub fn rank(self) -> u32 {
        match self {
            FiberKind::I(n) => n - 1,
            FiberKind::IStar(n) => n + 4,
            FiberKind::II => 0,
            FiberKind::III => 1,
            FiberKind::IV => 2,
            FiberKind::IVStar => 6,
            FiberKind::IIIStar => 7,
            FiberKind::IIStar => 8,
        }
    }

    pub fn is_reducible(self) -> bool {
        self.rank() > 0
    }

    /// The affine diagram of the components, when reducible.
    pub fn affine_type(self) -> Option<DynkinType> {
        match self {
            FiberKind::I(n) if n >= 2 => Some(DynkinType::a(n as usize - 1)),
            FiberKind::III => Some(DynkinType::a(1)),
            FiberKind::IV => Some(DynkinType::a(2)),
            FiberKind::IStar(n) => Some(DynkinType::d(n as usize + 4)),
            FiberKind::IVStar => Some(DynkinType::e(6)),
            FiberKind::IIIStar => Some(DynkinType::e(7)),
            FiberKind::IIStar => Some(DynkinType::e(8)),
            _ => None,
        }
    }
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberKind::I(n) => write!(f, "I{n}"),
            FiberKind::IStar(n) => write!(f, "I{n}*"),
            FiberKind::II => write!(f, "II"),
            FiberKind::III => write!(f, "III"),
            FiberKind::IV => write!(f, "IV"),
            FiberKind::IIStar => write!(f, "II*"),
            FiberKind::IIIStar => write!(f, "III*"),
            FiberKind::IVStar => write!(f, "IV*"),
        }
    }
}

/// Kodaira fibre types whose components realize an affine diagram.
pub fn affine_to_fibers(t: DynkinType) -> Vec<FiberKind> {
    match (t.family, t.rank) {
        (Family::A, 1) => vec![FiberKind::I(2), FiberKind::III],
        (Family::A, 2) => vec![FiberKind::I(3), FiberKind::IV],
        (Family::A, n) => vec![FiberKind::I(n as u32 + 1)],
        (Family::D, n) => vec![FiberKind::IStar(n as u32 - 4)],
        (Family::E, 6) => vec![FiberKind::IVStar],
        (Family::E, 7) => vec![FiberKind::IIIStar],
        (Family::E, _) => vec![FiberKind::IIStar],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KodairaFiber {
    pub kind: FiberKind,
    /// Multiple fibre of multiplicity 2, written with a leading 2.
    pub double: bool,
}

impl KodairaFiber {
    pub fn simple(kind: FiberKind) -> Self {
        KodairaFiber { kind, double: false }
    }
    pub fn double(kind: FiberKind) -> Self {
        KodairaFiber { kind, double: true }
    }
}

impl fmt::Display for KodairaFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.double {
            write!(f, "2")?;
        }
        write!(f, "{}", self.kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FibrationKind {
    Elliptic,
    QuasiElliptic,
}

impl fmt::Display for FibrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FibrationKind::Elliptic => "elliptic",
            FibrationKind::QuasiElliptic => "quasi-elliptic",
        })
    }
}

impl FromStr for FibrationKind {
    type Err = FibrationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "elliptic" => Ok(FibrationKind::Elliptic),
            "quasi-elliptic" | "quasielliptic" => Ok(FibrationKind::QuasiElliptic),
            other => Err(FibrationError::Parse { input: other.into(), reason: "expected elliptic or quasi-elliptic".into() }),
        }
    }
}

/// Singular fibres of a genus-one fibration, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberConfiguration {
    pub fibers: Vec<KodairaFiber>,
    pub kind: FibrationKind,
}

impl FiberConfiguration {
    pub fn new(mut fibers: Vec<KodairaFiber>, kind: FibrationKind) -> Self {
        fibers.sort_by(|a, b| b.kind.rank().cmp(&a.kind.rank()).then(b.cmp(a)));
        FiberConfiguration { fibers, kind }
    }

    /// Parses `(2I4*, I1)` with an optional `elliptic` / `quasi-elliptic`
    /// word before or after the parenthesis. Repeated fibres may be written
    /// `4xIII` or `4×III`. Without a kind word the configuration is elliptic.
    pub fn parse(input: &str) -> Result<Self, FibrationError> {
        let err = |reason: &str| FibrationError::Parse { input: input.to_string(), reason: reason.to_string() };
        let open = input.find('(').ok_or_else(|| err("missing '('"))?;
        let close = input.rfind(')').ok_or_else(|| err("missing ')'"))?;
        if close < open {
            return Err(err("unbalanced parentheses"));
        }
        let words = format!("{} {}", &input[..open], &input[close + 1..]);
        let kind = match words.trim() {
            "" => FibrationKind::Elliptic,
            w => w.parse()?,
        };
        let mut fibers = Vec::new();
        for item in input[open + 1..close].split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (count, rest) = match item.split_once(['x', '×']) {
                Some((n, r)) if !n.trim().is_empty() && n.trim().chars().all(|c| c.is_ascii_digit()) => {
                    (n.trim().parse::<usize>().map_err(|_| err("bad repeat count"))?, r.trim())
                }
                _ => (1, item),
            };
            let fiber = parse_fiber(rest).ok_or_else(|| err(&format!("unknown fibre type {rest:?}")))?;
            fibers.extend(std::iter::repeat_n(fiber, count));
        }
        if fibers.is_empty() {
            return Err(err("no fibres"));
        }
        Ok(Self::new(fibers, kind))
    }

    pub fn rank(&self) -> u32 {
        self.fibers.iter().map(|f| f.kind.rank()).sum()
    }

    pub fn double_count(&self) -> usize {
        self.fibers.iter().filter(|f| f.double).count()
    }

    /// Fibre kinds with multiplicity flags dropped, sorted.
    pub fn kinds(&self) -> Vec<FiberKind> {
        let mut k: Vec<FiberKind> = self.fibers.iter().map(|f| f.kind).collect();
        k.sort();
        k
    }

    fn matches_row(&self, row: &FiberConfiguration) -> bool {
        if self.kind != row.kind || self.fibers.len() != row.fibers.len() {
            return false;
        }
        // Quasi-elliptic rows leave the multiplicity of III fibres open.
        let key = |c: &FiberConfiguration| {
            let mut v: Vec<KodairaFiber> = c
                .fibers
                .iter()
                .map(|f| if c.kind == FibrationKind::QuasiElliptic && f.kind == FiberKind::III { KodairaFiber::simple(f.kind) } else { *f })
                .collect();
            v.sort();
            v
        };
        key(self) == key(row)
    }
}

fn parse_fiber(s: &str) -> Option<KodairaFiber> {
    let (double, body) = match s.strip_prefix('2') {
        Some(rest) if rest.starts_with('I') => (true, rest),
        _ => (false, s),
    };
    let kind = match body {
        "II" => FiberKind::II,
        "III" => FiberKind::III,
        "IV" => FiberKind::IV,
        "II*" => FiberKind::IIStar,
        "III*" => FiberKind::IIIStar,
        "IV*" => FiberKind::IVStar,
        _ => {
            let rest = body.strip_prefix('I')?;
            match rest.strip_suffix('*') {
                Some(n) => FiberKind::IStar(n.parse().ok()?),
                None => {
                    let n: u32 = rest.parse().ok()?;
                    if n == 0 {
                        return None;
                    }
                    FiberKind::I(n)
                }
            }
        }
    };
    Some(KodairaFiber { kind, double })
}

impl fmt::Display for FiberConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fibers.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) {}", parts.join(", "), self.kind)
    }
}

impl FromStr for FiberConfiguration {
    type Err = FibrationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Extremal rational elliptic configurations in characteristic 2.
pub const LANG_LIST: [&str; 12] = [
    "(II*)",
    "(II*, I1)",
    "(III*, I2)",
    "(IV*, IV)",
    "(IV*, I3, I1)",
    "(I4*)",
    "(I1*, I4)",
    "(I9, I1, I1, I1)",
    "(I8, III)",
    "(I6, IV, I2)",
    "(I5, I5, I1, I1)",
    "(I3, I3, I3, I3)",
];
/// Rational quasi-elliptic configurations in characteristic 2.
pub const ITO_LIST: [&str; 7] = [
    "(II*)",
    "(III*, III)",
    "(I4*)",
    "(I2*, III, III)",
    "(I0*, I0*)",
    "(I0*, III, III, III, III)",
    "(III, III, III, III, III, III, III, III)",
];

fn kinds_of(list: &[&str]) -> Vec<Vec<FiberKind>> {
    list.iter().map(|s| FiberConfiguration::parse(s).expect("static list parses").kinds()).collect()
}

/// Genus one fibrations on each type, as (type, cover, configurations).
/// The cover is empty when the list is the same for both.
pub const TYPE_FIBRATIONS: &[(&str, &str, &[&str])] = &[
    ("~E8", "", &["(2II*) quasi-elliptic"]),
    ("~E7+~A1", "supersingular", &["(2III*, III) quasi-elliptic", "(II*) quasi-elliptic"]),
    ("~E7+~A1", "classical 1", &["(2III*, III) quasi-elliptic", "(II*) quasi-elliptic"]),
    ("~E7+~A1", "classical 2", &["(2III*, 2III) quasi-elliptic", "(II*) quasi-elliptic"]),
    ("~E6+~A2", "supersingular", &["(2IV*, IV) elliptic", "(III*, 2III) quasi-elliptic"]),
    ("~E6+~A2", "classical", &["(2IV*, I3, I1) elliptic", "(III*, 2III) quasi-elliptic"]),
    ("~D8", "supersingular", &["(2I4*) quasi-elliptic", "(2II*) elliptic", "(II*) elliptic"]),
    ("~D8", "classical", &["(2I4*) quasi-elliptic", "(2II*, I1) elliptic", "(II*, I1) elliptic"]),
    ("~D4+~D4", "", &["(2I0*, 2I0*) quasi-elliptic", "(I4*) elliptic", "(2I4*) elliptic"]),
    (
        "VII",
        "",
        &["(I9, I1, I1, I1) elliptic", "(I8, 2III) elliptic", "(I5, I5, I1, I1) elliptic", "(I6, 2IV, I2) elliptic"],
    ),
    ("VIII", "", &["(2I1*, I4) elliptic", "(I2*, 2III, 2III) quasi-elliptic", "(IV*, I3, I1) elliptic"]),
];

/// Whether the Jacobian of a fibration with these singular fibres has
/// Mordell–Weil rank 0. Multiplicity flags are ignored. A quasi-elliptic
/// configuration is extremal exactly when it occurs at all, i.e. when it is
/// one of the rational quasi-elliptic types.
pub fn is_extremal(config: &FiberConfiguration) -> Result<bool, FibrationError> {
    let rank = config.rank();
    if rank > 8 {
        return Err(FibrationError::RankTooLarge(config.to_string(), rank));
    }
    let list = match config.kind {
        FibrationKind::Elliptic => kinds_of(&LANG_LIST),
        FibrationKind::QuasiElliptic => kinds_of(&ITO_LIST),
    };
    Ok(list.contains(&config.kinds()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Singularities {
    FourA1,
    D4,
    TwelveA1,
    D4AndEightA1,
    FourA1OrD4,
}

impl Singularities {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "4A1" => Singularities::FourA1,
            "D4" => Singularities::D4,
            "12A1" => Singularities::TwelveA1,
            "D4, 8A1" => Singularities::D4AndEightA1,
            "4A1 or D4" => Singularities::FourA1OrD4,
            _ => return None,
        })
    }
}

impl fmt::Display for Singularities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Singularities::FourA1 => "4A1",
            Singularities::D4 => "D4",
            Singularities::TwelveA1 => "12A1",
            Singularities::D4AndEightA1 => "D4, 8A1",
            Singularities::FourA1OrD4 => "4A1 or D4",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConductrixComponent {
    pub multiplicity: u32,
    /// Self-intersection of the reduced preimage on the resolved canonical cover.
    pub self_intersection: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductrixRecord {
    pub config: FiberConfiguration,
    /// Name of the tree shape: chain, star, tree or empty.
    pub shape: String,
    pub components: Vec<ConductrixComponent>,
    pub edges: Vec<(usize, usize)>,
    /// Index of the curve of cusps.
    pub cusp: Option<usize>,
    pub singularities: Singularities,
}

impl ConductrixRecord {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// A² for A = Σ mᵢCᵢ with the Cᵢ (−2)-curves meeting along the tree.
    pub fn self_pairing(&self) -> i64 {
        let m = |i: usize| self.components[i].multiplicity as i64;
        let diag: i64 = (0..self.components.len()).map(|i| -2 * m(i) * m(i)).sum();
        let off: i64 = self.edges.iter().map(|&(i, j)| 2 * m(i) * m(j)).sum();
        diag + off
    }
}

impl fmt::Display for ConductrixRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.config)?;
        if self.is_empty() {
            write!(f, "empty conductrix")?;
        } else {
            let parts: Vec<String> = self
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mark = if self.cusp == Some(i) { "(cusp)" } else { "" };
                    format!("{}_{}{}", c.multiplicity, c.self_intersection, mark)
                })
                .collect();
            let edges: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            write!(f, "{} [{}] on {}", self.shape, parts.join(" "), edges.join(","))?;
        }
        write!(f, "; singularities {}", self.singularities)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    format: String,
    version: u32,
    rows: Vec<TableRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRow {
    kind: String,
    fibers: String,
    shape: String,
    components: Vec<(u32, i32)>,
    edges: Vec<(usize, usize)>,
    cusp: Option<usize>,
    singularities: String,
}

pub const TABLE_FORMAT: &str = "conductrix-table";
pub const TABLE_VERSION: u32 = 1;

pub fn parse_conductrix_table(text: &str) -> Result<Vec<ConductrixRecord>, FibrationError> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| FibrationError::Table(e.to_string()))?;
    if file.format != TABLE_FORMAT || file.version != TABLE_VERSION {
        return Err(FibrationError::Table(format!("unsupported header {} v{}", file.format, file.version)));
    }
    file.rows
        .into_iter()
        .map(|r| {
            let kind: FibrationKind = r.kind.parse()?;
            let mut config = FiberConfiguration::parse(&r.fibers)?;
            config.kind = kind;
            let n = r.components.len();
            if r.edges.iter().any(|&(a, b)| a >= n || b >= n) || r.cusp.is_some_and(|c| c >= n) {
                return Err(FibrationError::Table(format!("{}: index out of range", r.fibers)));
            }
            let singularities = Singularities::parse(&r.singularities)
                .ok_or_else(|| FibrationError::Table(format!("unknown singularity entry {:?}", r.singularities)))?;
            Ok(ConductrixRecord {
                config,
                shape: r.shape,
                components: r
                    .components
                    .into_iter()
                    .map(|(multiplicity, self_intersection)| ConductrixComponent { multiplicity, self_intersection })
                    .collect(),
                edges: r.edges,
                cusp: r.cusp,
                singularities,
            })
        })
        .collect()
}

pub const CONDUCTRIX_TABLE: &str = include_str!("../data/tables/conductrix.json");

/// The shipped conductrix tables (special extremal elliptic, then quasi-elliptic).
pub fn conductrix_table() -> &'static [ConductrixRecord] {
    static TABLE: OnceLock<Vec<ConductrixRecord>> = OnceLock::new();
    TABLE.get_or_init(|| parse_conductrix_table(CONDUCTRIX_TABLE).expect("shipped table is well formed"))
}

pub fn conductrix_lookup(config: &FiberConfiguration) -> Result<&'static ConductrixRecord, FibrationError> {
    conductrix_table()
        .iter()
        .find(|r| config.matches_row(&r.config))
        .ok_or_else(|| FibrationError::NotInTable(config.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sing {
    Smooth,
    Nodal,
    Cuspidal,
    /// Rows of the genus-0 table.
    NotApplicable,
}

impl fmt::Display for Sing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sing::Smooth => "sm",
            Sing::Nodal => "n",
            Sing::Cuspidal => "c",
            Sing::NotApplicable => "-",
        })
    }
}

/// One way a curve C with A·C given can pull back to the canonical cover.
///
/// `r` points of multiplicity `m` on C are blown up, C̃ maps with degree `s`
/// onto C; `m` is `None` when nothing is blown up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlowupRow {
    pub sing: Sing,
    pub r: u32,
    pub m: Option<u32>,
    pub s: u32,
    pub ac: i32,
    pub ctilde2: i32,
    pub pa_tilde: i32,
}

impl fmt::Display for BlowupRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m.map_or("-".to_string(), |m| m.to_string());
        write!(
            f,
            "{:>4} {:>3} {:>3} {:>3} {:>4} {:>5} {:>4}",
            self.sing.to_string(),
            self.r,
            m,
            self.s,
            self.ac,
            self.ctilde2,
            self.pa_tilde
        )
    }
}

pub const BLOWUP_HEADER: &str = "sing   r   m   s  A.C  C~^2  p~a";
pub const MAX_BLOWUPS: u32 = 12;
pub const MAX_AC: i32 = 2;

/// All numerically possible rows for a curve of arithmetic genus `pa_c`
/// (0 or 1) with A·C ≥ `ac_min`.
///
/// C̃² = (C² − m²r)s²/2 and 2p̃ − 2 = C̃² − s·A·C, with C² = −2 for a smooth
/// rational curve and 0 for a fibre. A smooth rational curve has only points
/// of multiplicity 1. For `pa_c = 1` rows with s = 2 and p̃ = 0 are dropped
/// (a flat double cover of a cuspidal cubic by a rational curve does not
/// exist), and the remaining rows are labelled by the singularity of C:
/// a smooth C admits only r = 0 with A·C = 0, a nodal C only the blow-up of
/// its node (r = 1, m = 2, s = 1, A·C = 0), a cuspidal C every row.
pub fn enumerate_blowup_rows(pa_c: u32, ac_min: i32) -> Vec<BlowupRow> {
    let c2: i32 = if pa_c == 0 { -2 } else { 0 };
    let multiplicities: &[u32] = if pa_c == 0 { &[1] } else { &[1, 2] };
    let mut rows = Vec::new();
    for r in 0..=MAX_BLOWUPS {
        for &m in multiplicities {
            if r == 0 && m != multiplicities[0] {
                continue;
            }
            for s in [1u32, 2] {
                for ac in ac_min..=MAX_AC {
                    let twice = (c2 - (m * m * r) as i32) * (s * s) as i32;
                    if twice % 2 != 0 {
                        continue;
                    }
                    let ctilde2 = twice / 2;
                    let two_pa = ctilde2 - s as i32 * ac + 2;
                    if two_pa % 2 != 0 {
                        continue;
                    }
                    let pa_tilde = two_pa / 2;
                    if pa_tilde < 0 || pa_tilde > pa_c as i32 {
                        continue;
                    }
                    if pa_c == 1 && s == 2 && pa_tilde == 0 {
                        continue;
                    }
                    let m = (r > 0).then_some(m);
                    let base = BlowupRow { sing: Sing::NotApplicable, r, m, s, ac, ctilde2, pa_tilde };
                    if pa_c == 0 {
                        rows.push(base);
                        continue;
                    }
                    if r == 0 && ac == 0 {
                        rows.push(BlowupRow { sing: Sing::Smooth, ..base });
                    }
                    if r == 1 && m == Some(2) && s == 1 && ac == 0 {
                        rows.push(BlowupRow { sing: Sing::Nodal, ..base });
                    }
                    rows.push(BlowupRow { sing: Sing::Cuspidal, ..base });
                }
            }
        }
    }
    rows.sort();
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverType {
    /// Two double fibres: at least two distinct points are blown up, so the
    /// canonical cover has 4A1.
    Classical,
    /// One double fibre: a D4 point is possible.
    SupersingularCompatible,
    Inconsistent,
}

impl fmt::Display for CoverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverType::Classical => "classical (4A1)",
            CoverType::SupersingularCompatible => "supersingular compatible (D4)",
            CoverType::Inconsistent => "inconsistent",
        })
    }
}

/// Decides between 4A1 and D4 for a quasi-elliptic fibration from its number
/// of double fibres. Every genus-one fibration on an Enriques surface has a
/// double fibre, a classical surface has two, a supersingular one has one.
pub fn singular_vs_supersingular(config: &FiberConfiguration, double_fiber_count: u32) -> CoverType {
    let flagged = config.fibers.iter().filter(|f| f.double && f.kind != FiberKind::III).count() as u32;
    if config.kind != FibrationKind::QuasiElliptic || flagged > double_fiber_count {
        return CoverType::Inconsistent;
    }
    match double_fiber_count {
        2 => CoverType::Classical,
        1 => CoverType::SupersingularCompatible,
        _ => CoverType::Inconsistent,
    }
}
