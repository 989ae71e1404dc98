//! Rectangular patterns, periodic extension, explicit gluing of two
//! patterns through rows of the cyclic walk graph, and extension counts
//! over an L-shaped boundary.
//!
//! Coordinates are `(x, y)` with `x` the column and `y` the row; row `0`
//! is the bottom row and grids are always listed from `y = 0` upward.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::walk::{build_cyclic_walk_graph_with_budget, CyclicWalkGraph, DEFAULT_WALK_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RectPattern {
    pub width: usize,
    pub height: usize,
    /// Row-major, `cells[y * width + x]`.
    pub cells: Vec<Vertex>,
}

impl RectPattern {
    pub fn new(width: usize, height: usize, cells: Vec<Vertex>) -> Result<Self> {
        if width == 0 || height == 0 || cells.len() != width * height {
            return Err(Error::Parameter(format!(
                "a {width}x{height} pattern needs {} cells, got {}",
                width * height,
                cells.len()
            )));
        }
        Ok(RectPattern { width, height, cells })
    }

    pub fn from_rows(rows: &[Vec<Vertex>]) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Parameter("rows have different lengths".into()));
        }
        Self::new(width, rows.len(), rows.concat())
    }

    /// A one-row pattern.
    pub fn walk(cells: &[Vertex]) -> Result<Self> {
        Self::new(cells.len(), 1, cells.to_vec())
    }

    pub fn get(&self, x: usize, y: usize) -> Vertex {
        self.cells[y * self.width + x]
    }

    pub fn row(&self, y: usize) -> &[Vertex] {
        &self.cells[y * self.width..(y + 1) * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Vertex]> {
        self.cells.chunks(self.width)
    }

    /// First horizontally or vertically adjacent pair of cells whose values
    /// are not adjacent in `g`.
    pub fn first_violation(&self, g: &Graph) -> Option<((usize, usize), (usize, usize))> {
        if let Some(&v) = self.cells.iter().find(|&&v| v >= g.vertex_count()) {
            let i = self.cells.iter().position(|&c| c == v).unwrap();
            let at = (i % self.width, i / self.width);
            return Some((at, at));
        }
        for y in 0..self.height {
            for x in 0..self.width {
                let v = self.get(x, y);
                if x + 1 < self.width && !g.adjacent(v, self.get(x + 1, y)) {
                    return Some(((x, y), (x + 1, y)));
                }
                if y + 1 < self.height && !g.adjacent(v, self.get(x, y + 1)) {
                    return Some(((x, y), (x, y + 1)));
                }
            }
        }
        None
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.first_violation(g).is_none()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self.first_violation(g) {
            None => Ok(()),
            Some((p, q)) => Err(Error::Domain(format!(
                "pattern cells {p:?} and {q:?} do not map to adjacent vertices"
            ))),
        }
    }

    /// The `width x height` block with lower-left corner `(x0, y0)`.
    pub fn window(&self, x0: usize, y0: usize, width: usize, height: usize) -> Option<RectPattern> {
        if x0 + width > self.width || y0 + height > self.height {
            return None;
        }
        let cells = (y0..y0 + height)
            .flat_map(|y| (x0..x0 + width).map(move |x| (x, y)))
            .map(|(x, y)| self.get(x, y))
            .collect();
        Some(RectPattern { width, height, cells })
    }

    pub fn to_names(&self, g: &Graph) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(|&v| g.name(v).to_string()).collect())
            .collect()
    }

    pub fn from_names(g: &Graph, rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|name| {
                        g.vertex_by_name(name)
                            .ok_or_else(|| Error::Parameter(format!("unknown vertex {name:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Self::from_rows(&rows)?;
        p.validate(g)?;
        Ok(p)
    }

    /// Reads a JSON grid (a list of rows of vertex names).
    pub fn from_json(g: &Graph, text: &str) -> Result<Self> {
        let rows: Vec<Vec<String>> = serde_json::from_str(text)?;
        Self::from_names(g, &rows)
    }

    /// Plain text, one line per row starting from `y = 0`, names
    /// right-aligned to a common width.
    pub fn to_text(&self, g: &Graph) -> String {
        let cell = self.cells.iter().map(|&v| g.name(v).len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|&v| format!("{:>cell$}", g.name(v))).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// A uniformly shuffled backtracking fill; every connected graph admits
    /// a valid pattern of every size, so this always succeeds.
    pub fn random<R: Rng>(g: &Graph, width: usize, height: usize, rng: &mut R) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Parameter("pattern dimensions must be positive".into()));
        }
        let mut cells = vec![usize::MAX; width * height];
        if fill_random(g, width, 0, &mut cells, rng) {
            Ok(RectPattern { width, height, cells })
        } else {
            Err(Error::Domain("no valid pattern of that size".into()))
        }
    }
}

fn fill_random<R: Rng>(g: &Graph, width: usize, i: usize, cells: &mut [Vertex], rng: &mut R) -> bool {
    if i == cells.len() {
        return true;
    }
    let mut options: Vec<Vertex> = g
        .vertices()
        .filter(|&v| {
            (i.is_multiple_of(width) || g.adjacent(cells[i - 1], v))
                && (i < width || g.adjacent(cells[i - width], v))
        })
        .collect();
    options.shuffle(rng);
    for v in options {
        cells[i] = v;
        if fill_random(g, width, i + 1, cells, rng) {
            return true;
        }
    }
    cells[i] = usize::MAX;
    false
}

/// A doubly periodic configuration given by its fundamental domain, whose
/// dimensions are the periods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicConfig {
    pub fundamental: RectPattern,
}

impl PeriodicConfig {
    pub fn periods(&self) -> (usize, usize) {
        (self.fundamental.width, self.fundamental.height)
    }

    pub fn at(&self, x: i64, y: i64) -> Vertex {
        let (px, py) = self.periods();
        self.fundamental
            .get(x.rem_euclid(px as i64) as usize, y.rem_euclid(py as i64) as usize)
    }

    /// Row `y` over one horizontal period of length `len`.
    pub fn row(&self, y: i64, len: usize) -> Vec<Vertex> {
        (0..len as i64).map(|x| self.at(x, y)).collect()
    }

    /// Every adjacency inside the domain and across both wrap-arounds is
    /// an edge.
    pub fn is_torus_valid(&self, g: &Graph) -> bool {
        let (px, py) = self.periods();
        (0..py).all(|y| {
            (0..px).all(|x| {
                let v = self.fundamental.get(x, y);
                g.adjacent(v, self.fundamental.get((x + 1) % px, y))
                    && g.adjacent(v, self.fundamental.get(x, (y + 1) % py))
            })
        })
    }
}

pub fn checkerboard(g: &Graph, v: Vertex, w: Vertex) -> Result<PeriodicConfig> {
    if !g.adjacent(v, w) {
        return Err(Error::Domain(format!(
            "checkerboard needs an edge, {} and {} are not adjacent",
            g.name(v),
            g.name(w)
        )));
    }
    Ok(PeriodicConfig {
        fundamental: RectPattern::new(2, 2, vec![v, w, w, v])?,
    })
}

pub fn constant(g: &Graph, v: Vertex) -> Result<PeriodicConfig> {
    if !g.has_loop(v) {
        return Err(Error::Domain(format!(
            "constant configuration needs a loop at {}",
            g.name(v)
        )));
    }
    Ok(PeriodicConfig {
        fundamental: RectPattern::new(1, 1, vec![v])?,
    })
}

/// Reflects a sequence of mutually adjacent lines about its last line,
/// giving period `2k - 2`.
fn reflect<T: Clone>(lines: &[T]) -> Vec<T> {
    let k = lines.len();
    let mut out = lines.to_vec();
    out.extend(lines[1..k - 1].iter().rev().cloned());
    out
}

/// Columns of a single-column pattern made periodic horizontally.
fn periodize_columns(g: &Graph, columns: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    if columns.len() > 1 {
        return reflect(&columns);
    }
    let c = &columns[0];
    if c.iter().all(|&v| g.has_loop(v)) {
        return columns;
    }
    let h = c.len();
    let shifted: Vec<Vertex> = if h == 1 {
        vec![g.neighbors(c[0])[0]]
    } else {
        (0..h)
            .map(|j| if j + 1 < h { c[j + 1] } else { c[h - 2] })
            .collect()
    };
    vec![c.clone(), shifted]
}

/// Rows of a single-row, horizontally periodic pattern made periodic
/// vertically.
fn periodize_rows(g: &Graph, rows: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    if rows.len() > 1 {
        return reflect(&rows);
    }
    let r = &rows[0];
    if r.iter().all(|&v| g.has_loop(v)) {
        return rows;
    }
    let w = r.len();
    let shifted: Vec<Vertex> = (0..w).map(|i| r[(i + 1) % w]).collect();
    vec![r.clone(), shifted]
}

/// Reflects the pattern about its right face and then its top face, and
/// tiles. A side of length one is first thickened by a displaced copy of
/// itself (or kept, when every cell along it is looped).
pub fn extend_periodic(g: &Graph, p: &RectPattern) -> Result<PeriodicConfig> {
    p.validate(g)?;
    let columns: Vec<Vec<Vertex>> = (0..p.width)
        .map(|x| (0..p.height).map(|y| p.get(x, y)).collect())
        .collect();
    let columns = periodize_columns(g, columns);
    let px = columns.len();
    let rows: Vec<Vec<Vertex>> = (0..p.height)
        .map(|y| columns.iter().map(|c| c[y]).collect())
        .collect();
    let rows = periodize_rows(g, rows);
    let py = rows.len();
    let config = PeriodicConfig {
        fundamental: RectPattern::new(px, py, rows.concat())?,
    };
    debug_assert!(config.is_torus_valid(g));
    Ok(config)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    /// `b` sits `separation` rows above the top row of `a`.
    #[serde(rename = "0")]
    Zero,
    /// `b` is moved one row toward `a`.
    #[serde(rename = "e1")]
    E1,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Zero => "0",
            Phase::E1 => "e1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    pub phase: Phase,
    /// Number of steps from the top row of `a` to the bottom row of `b`.
    pub steps: usize,
    /// Common horizontal period of the strip.
    pub period: usize,
    /// `a` with lower-left corner `(0, 0)`, `b` with lower-left corner
    /// `b_origin`, and connecting rows between them.
    pub strip: RectPattern,
    pub b_origin: (usize, usize),
}

impl Glued {
    /// The strip is valid and contains both inputs at their offsets.
    pub fn verify(&self, g: &Graph, a: &RectPattern, b: &RectPattern) -> bool {
        self.strip.is_valid(g)
            && self.strip.window(0, 0, a.width, a.height).as_ref() == Some(a)
            && self
                .strip
                .window(self.b_origin.0, self.b_origin.1, b.width, b.height)
                .as_ref()
                == Some(b)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// BFS on `(row, parity)`: shortest walks of each parity from `src`.
fn parity_distances(cw: &CyclicWalkGraph, src: usize) -> (Vec<[Option<usize>; 2]>, Vec<[usize; 2]>) {
    let n = cw.vertex_count();
    let mut dist = vec![[None; 2]; n];
    let mut parent = vec![[usize::MAX; 2]; n];
    dist[src][0] = Some(0);
    let mut queue = VecDeque::from([(src, 0usize)]);
    while let Some((u, p)) = queue.pop_front() {
        let d = dist[u][p].unwrap();
        for w in cw.neighbors(u) {
            let q = 1 - p;
            if dist[w][q].is_none() {
                dist[w][q] = Some(d + 1);
                parent[w][q] = u;
                queue.push_back((w, q));
            }
        }
    }
    (dist, parent)
}

/// Finds rows joining the periodized top of `a` to the periodized bottom of
/// `b` with `separation` steps (phase 0) or `separation - 1` steps (phase
/// `e1`, tried only when `separation >= 2`). `None` means the periodized
/// search found nothing, not that no gluing exists.
pub fn glue_rect(g: &Graph, a: &RectPattern, b: &RectPattern, separation: usize) -> Result<Option<Glued>> {
    glue_rect_with_budget(g, a, b, separation, DEFAULT_WALK_BUDGET)
}

pub fn glue_rect_with_budget(
    g: &Graph,
    a: &RectPattern,
    b: &RectPattern,
    separation: usize,
    budget: u128,
) -> Result<Option<Glued>> {
    if !g.is_connected() {
        return Err(Error::Domain("graph is not connected".into()));
    }
    if separation == 0 {
        return Err(Error::Parameter("separation must be at least 1".into()));
    }
    let pa = extend_periodic(g, a)?;
    let pb = extend_periodic(g, b)?;
    let (ax, bx) = (pa.periods().0, pb.periods().0);
    let period = ax / gcd(ax, bx) * bx;
    let cw = build_cyclic_walk_graph_with_budget(g, period, budget)?;
    let top = cw
        .index_of(&pa.row(a.height as i64 - 1, period))
        .expect("periodized rows are closed walks");
    let bottom = cw
        .index_of(&pb.row(0, period))
        .expect("periodized rows are closed walks");
    let (dist, parent) = parity_distances(&cw, top);

    let mut candidates = vec![(Phase::Zero, separation)];
    if separation >= 2 {
        candidates.push((Phase::E1, separation - 1));
    }
    for (phase, steps) in candidates {
        let parity = steps % 2;
        let Some(d) = dist[bottom][parity] else { continue };
        if d > steps {
            continue;
        }
        let mut path = vec![bottom];
        let (mut at, mut p) = (bottom, parity);
        while path.len() <= d {
            at = parent[at][p];
            p = 1 - p;
            path.push(at);
        }
        path.reverse();
        let detour = cw.neighbors(bottom).next().expect("rows have neighbours");
        while path.len() <= steps {
            path.pop();
            path.extend([bottom, detour, bottom]);
        }
        debug_assert_eq!(path.len(), steps + 1);

        let mut rows: Vec<Vec<Vertex>> = (0..a.height as i64).map(|y| pa.row(y, period)).collect();
        rows.extend(path[1..steps].iter().map(|&r| cw.row(r).to_vec()));
        rows.extend((0..b.height as i64).map(|y| pb.row(y, period)));
        let strip = RectPattern::from_rows(&rows)?;
        let glued = Glued {
            phase,
            steps,
            period,
            strip,
            b_origin: (0, a.height - 1 + steps),
        };
        debug_assert!(glued.verify(g, a, b));
        return Ok(Some(glued));
    }
    Ok(None)
}

/// Boundary on the L-shape `{(i, 0)} ∪ {(n, i)}`, `0 <= i <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LBoundary {
    /// `bottom[i]` at `(i, 0)`.
    pub bottom: Vec<Vertex>,
    /// `right[i]` at `(n, i)`; `right[0] == bottom[n]`.
    pub right: Vec<Vertex>,
}

impl LBoundary {
    /// Restriction of `f` to the L-shape of side `n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Vertex) -> Self {
        LBoundary {
            bottom: (0..=n).map(|i| f(i, 0)).collect(),
            right: (0..=n).map(|i| f(n, i)).collect(),
        }
    }

    fn validate(&self, g: &Graph, n: usize) -> Result<()> {
        if self.bottom.len() != n + 1 || self.right.len() != n + 1 {
            return Err(Error::Parameter(format!(
                "an L-shape of side {n} has arms of {} cells",
                n + 1
            )));
        }
        if self.bottom[n] != self.right[0] {
            return Err(Error::Parameter("the arms disagree at the corner".into()));
        }
        for arm in [&self.bottom, &self.right] {
            if arm.iter().any(|&v| v >= g.vertex_count()) {
                return Err(Error::Parameter("boundary vertex out of range".into()));
            }
            if arm.windows(2).any(|w| !g.adjacent(w[0], w[1])) {
                return Err(Error::Domain(
                    "boundary is not a homomorphism on the L-shape".into(),
                ));
            }
        }
        Ok(())
    }
}

pub const DEFAULT_FREE_CELLS: usize = 16;

pub fn count_extensions(g: &Graph, boundary: &LBoundary, n: usize) -> Result<u128> {
    count_extensions_with_budget(g, boundary, n, DEFAULT_FREE_CELLS)
}

/// Exact number of homomorphisms on `[0, n]^2` that agree with the
/// boundary, by exhaustive backtracking over the `n^2` free cells.
pub fn count_extensions_with_budget(
    g: &Graph,
    boundary: &LBoundary,
    n: usize,
    max_free: usize,
) -> Result<u128> {
    boundary.validate(g, n)?;
    if n * n > max_free {
        return Err(Error::Resource {
            what: "free cells in the extension count",
            required: (n * n) as u128,
            budget: max_free as u128,
        });
    }
    let side = n + 1;
    let mut grid = vec![usize::MAX; side * side];
    for i in 0..=n {
        grid[i] = boundary.bottom[i];
        grid[i * side + n] = boundary.right[i];
    }
    let free: Vec<(usize, usize)> = (1..=n).flat_map(|y| (0..n).map(move |x| (x, y))).collect();
    Ok(count_from(g, side, &free, 0, &mut grid))
}

fn count_from(g: &Graph, side: usize, free: &[(usize, usize)], k: usize, grid: &mut [Vertex]) -> u128 {
    let Some(&(x, y)) = free.get(k) else { return 1 };
    let below = grid[(y - 1) * side + x];
    let mut total = 0;
    for &v in g.neighbors(below) {
        if x > 0 && !g.adjacent(grid[y * side + x - 1], v) {
            continue;
        }
        if x + 1 == side - 1 && !g.adjacent(grid[y * side + x + 1], v) {
            continue;
        }
        grid[y * side + x] = v;
        total += count_from(g, side, free, k + 1, grid);
    }
    grid[y * side + x] = usize::MAX;
    total
}
