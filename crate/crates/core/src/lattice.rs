//! The Γ/Δ Tokuyama six-vertex model on an `r × N` grid.
//!
//! Rows are numbered `0..r` from the top. Columns are stored by array
//! position `0..N` from the left; the column *label* used for boundary
//! conditions runs right to left, so label `ℓ` sits at position `N − 1 − ℓ`.
//! Vertical edge spins of one horizontal cut are packed into a bitmask with
//! bit `p` set when the edge at position `p` is `⊖`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{AlgError, Generator, LaurentExpr};
use crate::sixvertex::{table_weights, SixVertexWeights, Spin, TableKind, VertexMatrix};

/// Widest grid accepted by the state-sum paths (bitmask width).
pub const MAX_COLUMNS: usize = 60;
/// Widest grid for full depth-first materialization.
pub const DFS_MAX_COLUMNS: usize = 24;
/// Default cap on `N` for the transfer-operator path.
pub const TRANSFER_CAP: usize = 20;
/// Widest grid that [`render_state`] draws.
pub const RENDER_MAX_COLUMNS: usize = 12;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("grid width {n} exceeds the cap of {cap}")]
    Resource { n: usize, cap: usize },
    #[error("inadmissible vertex at row {row}, column position {col}")]
    Inadmissible { row: usize, col: usize },
    #[error("expected {expected} row parameters, got {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A weakly decreasing sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition, LatticeError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(LatticeError::Partition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The parts padded with zeros (or stripped of trailing zeros) to length `r`.
    pub fn padded(&self, r: usize) -> Result<Vec<usize>, LatticeError> {
        if self.length() > r {
            return Err(LatticeError::Geometry(format!("{self} has more than {r} nonzero parts")));
        }
        let mut v: Vec<usize> = self.parts.iter().copied().filter(|&p| p > 0).collect();
        v.resize(r, 0);
        Ok(v)
    }

    /// All partitions with at most `rows` parts, each at most `max_part`.
    pub fn all_in_box(rows: usize, max_part: usize) -> Vec<Partition> {
        fn rec(rows: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if cur.len() == rows {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in 0..=bound {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, max_part, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Partition {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| LatticeError::Partition(format!("`{s}`: {e}")))?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Gamma,
    Delta,
}

impl Flavor {
    pub fn table_kind(self) -> TableKind {
        match self {
            Flavor::Gamma => TableKind::TGamma,
            Flavor::Delta => TableKind::TDelta,
        }
    }

    /// Index into `z` of the parameter for grid row `row` (0 = top).
    /// Γ counts rows from the top, Δ from the bottom.
    pub fn row_parameter(self, row: usize, rows: usize) -> usize {
        match self {
            Flavor::Gamma => row,
            Flavor::Delta => rows - 1 - row,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Gamma => "gamma",
            Flavor::Delta => "delta",
        }
    }
}

impl FromStr for Flavor {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gamma" | "g" => Ok(Flavor::Gamma),
            "delta" | "d" => Ok(Flavor::Delta),
            _ => Err(LatticeError::Geometry(format!("unknown flavor `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridGeometry {
    pub rows: usize,
    pub cols: usize,
    pub flavor: Flavor,
}

/// Boundary spins. `top`/`bottom` are indexed by column position, `left`/`right` by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySpec {
    pub top: Vec<Spin>,
    pub bottom: Vec<Spin>,
    pub left: Vec<Spin>,
    pub right: Vec<Spin>,
}

impl BoundarySpec {
    fn check(&self, g: &GridGeometry) -> Result<(), LatticeError> {
        if self.top.len() != g.cols
            || self.bottom.len() != g.cols
            || self.left.len() != g.rows
            || self.right.len() != g.rows
        {
            return Err(LatticeError::Geometry("boundary lengths do not match the grid".into()));
        }
        if g.cols > MAX_COLUMNS {
            return Err(LatticeError::Resource { n: g.cols, cap: MAX_COLUMNS });
        }
        Ok(())
    }
}

fn mask_of(spins: &[Spin]) -> u64 {
    spins.iter().enumerate().filter(|(_, s)| s.is_minus()).fold(0, |m, (p, _)| m | (1 << p))
}

fn spin(bit: bool) -> Spin {
    if bit {
        Spin::Minus
    } else {
        Spin::Plus
    }
}

/// `⊖` on top at labels `λ_i + r − i`; left and bottom `⊕`; right `⊖`.
pub fn boundary_from_partition(lambda: &Partition, r: usize, n: usize) -> Result<BoundarySpec, LatticeError> {
    if r == 0 {
        return Err(LatticeError::Geometry("at least one row is required".into()));
    }
    let parts = lambda.padded(r)?;
    if n < parts[0] + r {
        return Err(LatticeError::Geometry(format!("{n} columns is fewer than lambda_1 + r = {}", parts[0] + r)));
    }
    let mut top = vec![Spin::Plus; n];
    for (i, &p) in parts.iter().enumerate() {
        let label = p + r - 1 - i;
        top[n - 1 - label] = Spin::Minus;
    }
    Ok(BoundarySpec { top, bottom: vec![Spin::Plus; n], left: vec![Spin::Plus; r], right: vec![Spin::Minus; r] })
}

/// The six admissible vertex configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexConfig {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl VertexConfig {
    pub const ALL: [VertexConfig; 6] =
        [VertexConfig::A1, VertexConfig::A2, VertexConfig::B1, VertexConfig::B2, VertexConfig::C1, VertexConfig::C2];

    /// Spins `(left, top, bottom, right)`, `true` meaning `⊖`.
    pub fn edges(self) -> [bool; 4] {
        match self {
            VertexConfig::A1 => [false, false, false, false],
            VertexConfig::A2 => [true, true, true, true],
            VertexConfig::B1 => [false, true, true, false],
            VertexConfig::B2 => [true, false, false, true],
            VertexConfig::C1 => [true, false, true, false],
            VertexConfig::C2 => [false, true, false, true],
        }
    }

    pub fn classify(left: Spin, top: Spin, bottom: Spin, right: Spin) -> Option<VertexConfig> {
        let e = [left.is_minus(), top.is_minus(), bottom.is_minus(), right.is_minus()];
        Self::ALL.into_iter().find(|c| c.edges() == e)
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn weight(self, w: &SixVertexWeights) -> &LaurentExpr {
        match self {
            VertexConfig::A1 => &w.a1,
            VertexConfig::A2 => &w.a2,
            VertexConfig::B1 => &w.b1,
            VertexConfig::B2 => &w.b2,
            VertexConfig::C1 => &w.c1,
            VertexConfig::C2 => &w.c2,
        }
    }
}

/// A full assignment of edge spins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeState {
    /// `r × (N + 1)`: `horizontal[i][j]` is the edge left of vertex `(i, j)`;
    /// `horizontal[i][N]` is the right boundary.
    pub horizontal: Vec<Vec<Spin>>,
    /// `(r + 1) × N`: `vertical[i][j]` is the edge above vertex `(i, j)`;
    /// `vertical[r][j]` is the bottom boundary.
    pub vertical: Vec<Vec<Spin>>,
}

impl LatticeState {
    pub fn rows(&self) -> usize {
        self.horizontal.len()
    }

    pub fn cols(&self) -> usize {
        self.vertical[0].len()
    }

    pub fn config(&self, i: usize, j: usize) -> Option<VertexConfig> {
        VertexConfig::classify(
            self.horizontal[i][j],
            self.vertical[i][j],
            self.vertical[i + 1][j],
            self.horizontal[i][j + 1],
        )
    }

    pub fn matches(&self, b: &BoundarySpec) -> bool {
        let r = self.rows();
        let n = self.cols();
        self.vertical[0] == b.top
            && self.vertical[r] == b.bottom
            && (0..r).all(|i| self.horizontal[i][0] == b.left[i] && self.horizontal[i][n] == b.right[i])
    }

    /// Every vertex has as many `⊖` edges entering (left, top) as leaving
    /// (bottom, right), so the `⊖` edges form down-right paths.
    pub fn paths_conserved(&self) -> bool {
        (0..self.rows()).all(|i| {
            (0..self.cols()).all(|j| {
                let inn = self.horizontal[i][j].is_minus() as u8 + self.vertical[i][j].is_minus() as u8;
                let out = self.vertical[i + 1][j].is_minus() as u8 + self.horizontal[i][j + 1].is_minus() as u8;
                inn == out
            })
        })
    }
}

/// One row's worth of vertices: the bottom cut and the configurations used.
#[derive(Clone, Debug)]
struct RowTransition {
    bottom: u64,
    configs: Vec<VertexConfig>,
}

/// All ways to fill a row with the given top cut and side spins.
fn row_transitions(top: u64, n: usize, left: Spin, right: Spin) -> Vec<RowTransition> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        p: usize,
        n: usize,
        top: u64,
        h: bool,
        right: bool,
        bottom: u64,
        cfg: &mut Vec<VertexConfig>,
        out: &mut Vec<RowTransition>,
    ) {
        if p == n {
            if h == right {
                out.push(RowTransition { bottom, configs: cfg.clone() });
            }
            return;
        }
        let t = top >> p & 1 == 1;
        for c in VertexConfig::ALL {
            let [l, tt, b, r] = c.edges();
            if l == h && tt == t {
                cfg.push(c);
                rec(p + 1, n, top, r, right, bottom | ((b as u64) << p), cfg, out);
                cfg.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, top, left.is_minus(), right.is_minus(), 0, &mut Vec::new(), &mut out);
    out
}

type TransitionTable = Vec<HashMap<u64, Vec<RowTransition>>>;

/// Transitions restricted to cuts that are reachable from the top and can
/// still reach the bottom boundary.
fn live_transitions(b: &BoundarySpec, g: &GridGeometry) -> Result<TransitionTable, LatticeError> {
    b.check(g)?;
    let (r, n) = (g.rows, g.cols);
    let mut table: TransitionTable = Vec::with_capacity(r);
    let mut frontier: HashSet<u64> = [mask_of(&b.top)].into_iter().collect();
    for i in 0..r {
        let mut layer = HashMap::new();
        let mut next = HashSet::new();
        for &m in &frontier {
            let ts = row_transitions(m, n, b.left[i], b.right[i]);
            next.extend(ts.iter().map(|t| t.bottom));
            layer.insert(m, ts);
        }
        table.push(layer);
        frontier = next;
    }
    let mut alive: HashSet<u64> = [mask_of(&b.bottom)].into_iter().collect();
    for layer in table.iter_mut().rev() {
        for ts in layer.values_mut() {
            ts.retain(|t| alive.contains(&t.bottom));
        }
        layer.retain(|_, ts| !ts.is_empty());
        alive = layer.keys().copied().collect();
    }
    Ok(table)
}

/// Number of admissible states, by dynamic programming over row cuts.
pub fn count_states(b: &BoundarySpec, g: &GridGeometry) -> Result<u128, LatticeError> {
    let table = live_transitions(b, g)?;
    let mut counts: HashMap<u64, u128> = [(mask_of(&b.top), 1)].into_iter().collect();
    for layer in &table {
        let mut next: HashMap<u64, u128> = HashMap::new();
        for (m, c) in &counts {
            for t in layer.get(m).into_iter().flatten() {
                *next.entry(t.bottom).or_default() += c;
            }
        }
        counts = next;
    }
    Ok(counts.get(&mask_of(&b.bottom)).copied().unwrap_or(0))
}

/// All admissible states, materialized from the row-cut dynamic program.
pub fn enumerate_states(b: &BoundarySpec, g: &GridGeometry) -> Result<Vec<LatticeState>, LatticeError> {
    let table = live_transitions(b, g)?;
    let mut out = Vec::new();
    let mut rows: Vec<&RowTransition> = Vec::new();
    fn walk<'a>(
        i: usize,
        m: u64,
        table: &'a TransitionTable,
        rows: &mut Vec<&'a RowTransition>,
        top: u64,
        out: &mut Vec<LatticeState>,
        b: &BoundarySpec,
    ) {
        if i == table.len() {
            out.push(build_state(top, rows, b));
            return;
        }
        for t in table[i].get(&m).into_iter().flatten() {
            rows.push(t);
            walk(i + 1, t.bottom, table, rows, top, out, b);
            rows.pop();
        }
    }
    let top = mask_of(&b.top);
    walk(0, top, &table, &mut rows, top, &mut out, b);
    Ok(out)
}

fn build_state(top: u64, rows: &[&RowTransition], b: &BoundarySpec) -> LatticeState {
    let n = b.top.len();
    let mut vertical = vec![(0..n).map(|p| spin(top >> p & 1 == 1)).collect::<Vec<_>>()];
    let mut horizontal = Vec::new();
    for (i, t) in rows.iter().enumerate() {
        let mut h = vec![b.left[i]];
        h.extend(t.configs.iter().map(|c| spin(c.edges()[3])));
        horizontal.push(h);
        vertical.push((0..n).map(|p| spin(t.bottom >> p & 1 == 1)).collect());
    }
    LatticeState { horizontal, vertical }
}

/// Independent oracle: vertex-by-vertex depth-first search over all edge
/// assignments, without row cuts.
pub fn enumerate_states_dfs(b: &BoundarySpec, g: &GridGeometry) -> Result<Vec<LatticeState>, LatticeError> {
    b.check(g)?;
    if g.cols > DFS_MAX_COLUMNS {
        return Err(LatticeError::Resource { n: g.cols, cap: DFS_MAX_COLUMNS });
    }
    let (r, n) = (g.rows, g.cols);
    let mut s = LatticeState {
        horizontal: (0..r)
            .map(|i| {
                let mut h = vec![Spin::Plus; n + 1];
                h[0] = b.left[i];
                h
            })
            .collect(),
        vertical: (0..=r).map(|i| if i == 0 { b.top.clone() } else { vec![Spin::Plus; n] }).collect(),
    };
    let mut out = Vec::new();
    fn go(k: usize, r: usize, n: usize, s: &mut LatticeState, b: &BoundarySpec, out: &mut Vec<LatticeState>) {
        if k == r * n {
            if s.matches(b) {
                out.push(s.clone());
            }
            return;
        }
        let (i, j) = (k / n, k % n);
        for bottom in [Spin::Plus, Spin::Minus] {
            for right in [Spin::Plus, Spin::Minus] {
                if VertexConfig::classify(s.horizontal[i][j], s.vertical[i][j], bottom, right).is_none() {
                    continue;
                }
                if j == n - 1 && right != b.right[i] {
                    continue;
                }
                if i == r - 1 && bottom != b.bottom[j] {
                    continue;
                }
                s.vertical[i + 1][j] = bottom;
                s.horizontal[i][j + 1] = right;
                go(k + 1, r, n, s, b, out);
            }
        }
    }
    go(0, r, n, &mut s, b, &mut out);
    Ok(out)
}

fn check_arity(z_len: usize, r: usize) -> Result<(), LatticeError> {
    if z_len != r {
        return Err(LatticeError::Arity { expected: r, got: z_len });
    }
    Ok(())
}

fn row_weight_tables(g: &GridGeometry, z: &[LaurentExpr]) -> Result<Vec<SixVertexWeights>, LatticeError> {
    check_arity(z.len(), g.rows)?;
    (0..g.rows)
        .map(|i| {
            let zi = &z[g.flavor.row_parameter(i, g.rows)];
            table_weights(g.flavor.table_kind(), std::slice::from_ref(zi)).map_err(|e| match e {
                crate::sixvertex::SixVertexError::Alg(a) => LatticeError::Alg(a),
                other => LatticeError::Geometry(other.to_string()),
            })
        })
        .collect()
}

/// Product of the Table weights over every vertex of the state.
pub fn state_weight(s: &LatticeState, g: &GridGeometry, z: &[LaurentExpr]) -> Result<LaurentExpr, LatticeError> {
    let tables = row_weight_tables(g, z)?;
    let mut acc = LaurentExpr::one();
    for (i, w) in tables.iter().enumerate() {
        for j in 0..g.cols {
            let c = s.config(i, j).ok_or(LatticeError::Inadmissible { row: i, col: j })?;
            acc = &acc * c.weight(w);
        }
    }
    Ok(acc)
}

/// The commutative semiring a state sum is accumulated in.
pub trait Weight: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl Weight for LaurentExpr {
    fn zero() -> Self {
        LaurentExpr::zero()
    }
    fn one() -> Self {
        LaurentExpr::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Weight for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// Row-cut dynamic program with per-row configuration weights
/// `row_weights[i][config.index()]`.
pub fn state_sum<W: Weight>(b: &BoundarySpec, g: &GridGeometry, row_weights: &[[W; 6]]) -> Result<W, LatticeError> {
    check_arity(row_weights.len(), g.rows)?;
    let table = live_transitions(b, g)?;
    let mut vals: HashMap<u64, W> = [(mask_of(&b.top), W::one())].into_iter().collect();
    for (i, layer) in table.iter().enumerate() {
        let w = &row_weights[i];
        let contributions: Vec<(u64, W)> = vals
            .par_iter()
            .flat_map_iter(|(m, v)| {
                layer.get(m).into_iter().flatten().map(move |t| {
                    let rw = t.configs.iter().fold(W::one(), |acc, c| acc.mul(&w[c.index()]));
                    (t.bottom, v.mul(&rw))
                })
            })
            .collect();
        let mut next: HashMap<u64, W> = HashMap::new();
        for (m, v) in contributions {
            match next.get_mut(&m) {
                Some(x) => *x = x.add(&v),
                None => {
                    next.insert(m, v);
                }
            }
        }
        vals = next;
    }
    Ok(vals.remove(&mask_of(&b.bottom)).unwrap_or_else(W::zero))
}

fn config_array(w: &SixVertexWeights) -> [LaurentExpr; 6] {
    VertexConfig::ALL.map(|c| c.weight(w).clone())
}

/// Row parameters `z_1..z_r` as expressions.
pub fn default_row_parameters(r: usize) -> Vec<LaurentExpr> {
    (1..=r).map(|i| LaurentExpr::var(Generator::z(i))).collect()
}

/// Symbolic partition function.
pub fn partition_function(
    lambda: &Partition,
    r: usize,
    n: usize,
    flavor: Flavor,
    z: &[LaurentExpr],
) -> Result<LaurentExpr, LatticeError> {
    let b = boundary_from_partition(lambda, r, n)?;
    let g = GridGeometry { rows: r, cols: n, flavor };
    let tables: Vec<[LaurentExpr; 6]> = row_weight_tables(&g, z)?.iter().map(config_array).collect();
    state_sum(&b, &g, &tables)
}

/// Partition function at a rational point; weights are evaluated before the sum.
pub fn partition_function_at(
    lambda: &Partition,
    r: usize,
    n: usize,
    flavor: Flavor,
    z: &[BigRational],
    sqrt_v: &BigRational,
) -> Result<BigRational, LatticeError> {
    check_arity(z.len(), r)?;
    let b = boundary_from_partition(lambda, r, n)?;
    let g = GridGeometry { rows: r, cols: n, flavor };
    let mut point: HashMap<Generator, BigRational> = [(Generator::SQRT_V, sqrt_v.clone())].into_iter().collect();
    let syms = vec![LaurentExpr::var(Generator::Z); r];
    let base = row_weight_tables(&g, &syms)?;
    let tables: Vec<[BigRational; 6]> = (0..r)
        .map(|i| {
            point.insert(Generator::Z, z[flavor.row_parameter(i, r)].clone());
            let w = &base[i];
            let vals = VertexConfig::ALL.map(|c| c.weight(w).eval_rational(&point));
            let [a, b2, c, d, e, f] = vals;
            Ok([a?, b2?, c?, d?, e?, f?])
        })
        .collect::<Result<_, AlgError>>()?;
    state_sum(&b, &g, &tables)
}

/// Transfer-operator evaluation: the state vector over `(vertical cut,
/// horizontal spin)` is pushed through each vertex's 4×4 layout matrix,
/// read as `M[(right, bottom)][(left, top)]`.
pub fn transfer_partition_function(
    lambda: &Partition,
    r: usize,
    n: usize,
    flavor: Flavor,
    z: &[LaurentExpr],
) -> Result<LaurentExpr, LatticeError> {
    transfer_partition_function_capped(lambda, r, n, flavor, z, TRANSFER_CAP)
}

pub fn transfer_partition_function_capped(
    lambda: &Partition,
    r: usize,
    n: usize,
    flavor: Flavor,
    z: &[LaurentExpr],
    cap: usize,
) -> Result<LaurentExpr, LatticeError> {
    if n > cap {
        return Err(LatticeError::Resource { n, cap });
    }
    let b = boundary_from_partition(lambda, r, n)?;
    let g = GridGeometry { rows: r, cols: n, flavor };
    let mats: Vec<VertexMatrix> = row_weight_tables(&g, z)?.iter().map(crate::sixvertex::weights_to_matrix).collect();
    let mut vec: HashMap<u64, LaurentExpr> = [(mask_of(&b.top), LaurentExpr::one())].into_iter().collect();
    for (i, m) in mats.iter().enumerate() {
        let m = m.as_matrix();
        // (cut, horizontal spin) -> amplitude
        let mut row: HashMap<(u64, bool), LaurentExpr> =
            vec.into_iter().map(|(k, v)| ((k, b.left[i].is_minus()), v)).collect();
        for p in 0..n {
            let mut next: HashMap<(u64, bool), LaurentExpr> = HashMap::new();
            for ((cut, h), amp) in row {
                let t = cut >> p & 1 == 1;
                let col = 2 * h as usize + t as usize;
                for right in [false, true] {
                    for bottom in [false, true] {
                        let w = m.get(2 * right as usize + bottom as usize, col);
                        if w.is_zero() {
                            continue;
                        }
                        let cut2 = (cut & !(1 << p)) | ((bottom as u64) << p);
                        let e = next.entry((cut2, right)).or_insert_with(LaurentExpr::zero);
                        *e = &*e + &(&amp * w);
                    }
                }
            }
            row = next;
        }
        let want = b.right[i].is_minus();
        vec = HashMap::new();
        for ((cut, h), amp) in row {
            if h == want {
                let e = vec.entry(cut).or_insert_with(LaurentExpr::zero);
                *e = &*e + &amp;
            }
        }
    }
    Ok(vec.remove(&mask_of(&b.bottom)).unwrap_or_else(LaurentExpr::zero))
}

/// ASCII drawing: vertical edge rows interleaved with `h o h o … h` vertex rows.
pub fn render_state(s: &LatticeState) -> Result<String, LatticeError> {
    let n = s.cols();
    if n > RENDER_MAX_COLUMNS {
        return Err(LatticeError::Resource { n, cap: RENDER_MAX_COLUMNS });
    }
    let mut out = String::new();
    let vline = |row: &[Spin]| -> String {
        let mut l = String::from("  ");
        for (j, sp) in row.iter().enumerate() {
            if j > 0 {
                l.push_str("   ");
            }
            l.push(sp.symbol());
        }
        l
    };
    for i in 0..s.rows() {
        out.push_str(&vline(&s.vertical[i]));
        out.push('\n');
        let mut l = String::new();
        for j in 0..=n {
            l.push(s.horizontal[i][j].symbol());
            if j < n {
                l.push_str(" o ");
            }
        }
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str(&vline(&s.vertical[s.rows()]));
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn geom(r: usize, n: usize, flavor: Flavor) -> GridGeometry {
        GridGeometry { rows: r, cols: n, flavor }
    }

    #[test]
    fn boundary_examples() {
        let b = boundary_from_partition(&part("0"), 1, 1).unwrap();
        assert_eq!(b.top, vec![Spin::Minus]);
        let b = boundary_from_partition(&part("1"), 1, 2).unwrap();
        // label 1 is the leftmost of two positions
        assert_eq!(b.top, vec![Spin::Minus, Spin::Plus]);
        let b = boundary_from_partition(&part("0,0"), 2, 2).unwrap();
        assert_eq!(b.top, vec![Spin::Minus, Spin::Minus]);
        assert!(matches!(boundary_from_partition(&part("2,1"), 2, 3), Err(LatticeError::Geometry(_))));
        assert!("2,3".parse::<Partition>().is_err());
    }

    #[test]
    fn small_state_counts() {
        let cases = [
            ("0", 1, 1, 1),
            ("1", 1, 2, 1),
            ("0,0", 2, 2, 2),
            ("1,0", 2, 3, 3),
            ("2,1", 2, 4, 3),
            ("2,1,0", 3, 5, 26),
            ("4,4,4", 3, 7, 7),
            ("3,1,0", 3, 6, 41),
            ("2,2,1,0", 4, 6, 300),
        ];
        for (l, r, n, want) in cases {
            let b = boundary_from_partition(&part(l), r, n).unwrap();
            let g = geom(r, n, Flavor::Gamma);
            assert_eq!(count_states(&b, &g).unwrap(), want, "{l}");
            let dp = enumerate_states(&b, &g).unwrap();
            assert_eq!(dp.len() as u128, want);
            let mut dfs = enumerate_states_dfs(&b, &g).unwrap();
            let mut dp2 = dp.clone();
            let key = |s: &LatticeState| format!("{s:?}");
            dfs.sort_by_key(key);
            dp2.sort_by_key(key);
            assert_eq!(dfs, dp2);
            assert!(dp.iter().all(|s| s.matches(&b) && s.paths_conserved()));
        }
    }

    #[test]
    fn single_state_weights() {
        let z = default_row_parameters(1);
        let b = boundary_from_partition(&part("0"), 1, 1).unwrap();
        let g = geom(1, 1, Flavor::Gamma);
        let s = &enumerate_states(&b, &g).unwrap()[0];
        assert_eq!(s.config(0, 0), Some(VertexConfig::C2));
        assert!(state_weight(s, &g, &z).unwrap().is_one());

        let b = boundary_from_partition(&part("1"), 1, 2).unwrap();
        let s = &enumerate_states(&b, &geom(1, 2, Flavor::Gamma)).unwrap()[0];
        let want: LaurentExpr = "sqrt_v*z_1".parse().unwrap();
        for f in [Flavor::Gamma, Flavor::Delta] {
            assert_eq!(state_weight(s, &geom(1, 2, f), &z).unwrap(), want);
        }
    }

    #[test]
    fn partition_function_examples() {
        let z2 = default_row_parameters(2);
        for f in [Flavor::Gamma, Flavor::Delta] {
            let zz = partition_function(&part("0,0"), 2, 2, f, &z2).unwrap();
            assert_eq!(zz, "z_1 - sqrt_v^2*z_2".parse().unwrap());
            let z10 = partition_function(&part("1,0"), 2, 3, f, &z2).unwrap();
            assert_eq!(z10, "sqrt_v*(z_1 - sqrt_v^2*z_2)*(z_1 + z_2)".parse().unwrap());
            let t = transfer_partition_function(&part("1,0"), 2, 3, f, &z2).unwrap();
            assert_eq!(t, z10);
            let at = partition_function_at(&part("2,1"), 2, 4, f, &[rat(2, 1), rat(3, 1)], &rat(1, 5)).unwrap();
            assert_eq!(at, rat(282, 625));
        }
    }

    #[test]
    fn padding_does_not_change_value() {
        let z = default_row_parameters(2);
        let a = partition_function(&part("2,1"), 2, 4, Flavor::Delta, &z).unwrap();
        let b = partition_function(&part("2,1"), 2, 6, Flavor::Delta, &z).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn transfer_cap() {
        let z = default_row_parameters(1);
        let r = transfer_partition_function_capped(&part("1"), 1, 5, Flavor::Gamma, &z, 4);
        assert!(matches!(r, Err(LatticeError::Resource { n: 5, cap: 4 })));
    }

    #[test]
    fn rendering() {
        let b = boundary_from_partition(&part("1"), 1, 2).unwrap();
        let s = &enumerate_states(&b, &geom(1, 2, Flavor::Gamma)).unwrap()[0];
        assert_eq!(render_state(s).unwrap(), "  -   +\n+ o - o -\n  +   +\n");
    }
}
