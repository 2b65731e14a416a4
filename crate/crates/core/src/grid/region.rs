use std::ops::Range;

use super::SpatialGrid;

/// Subset of space-time nodes over which norms are taken.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Region {
    nodes: Option<Vec<bool>>,
    interior_slices: bool,
}

impl Region {
    /// Every node, every slice.
    pub fn all() -> Self {
        Self::default()
    }

    /// Every node, slices `1..nt-1`.
    pub fn interior_slices() -> Self {
        Self {
            nodes: None,
            interior_slices: true,
        }
    }

    pub fn with_nodes(mut self, mask: Vec<bool>) -> Self {
        self.nodes = Some(match self.nodes.take() {
            Some(old) => old.iter().zip(&mask).map(|(&a, &b)| a && b).collect(),
            None => mask,
        });
        self
    }

    /// Restricts to nodes with `|x| <= radius`.
    pub fn within_ball(self, grid: &SpatialGrid, radius: f64) -> Self {
        let mask = (0..grid.len())
            .map(|idx| {
                let x = grid.point(idx);
                (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() <= radius
            })
            .collect();
        self.with_nodes(mask)
    }

    /// Restricts to nodes whose index is at least `margin` away from the
    /// periodic seam on every axis.
    pub fn away_from_seam(self, grid: &SpatialGrid, margin: usize) -> Self {
        let n = grid.n();
        let mask = (0..grid.len())
            .map(|idx| grid.unflatten(idx).iter().all(|&i| i >= margin && i + margin < n))
            .collect();
        self.with_nodes(mask)
    }

    /// Restricts to nodes with `|x_i| <= half_width` on every axis.
    pub fn within_cube(self, grid: &SpatialGrid, half_width: f64) -> Self {
        let mask = (0..grid.len())
            .map(|idx| grid.point(idx).iter().all(|c| c.abs() <= half_width))
            .collect();
        self.with_nodes(mask)
    }

    pub fn nodes(&self) -> Option<&[bool]> {
        self.nodes.as_deref()
    }

    #[inline]
    pub fn contains_node(&self, idx: usize) -> bool {
        self.nodes.as_ref().is_none_or(|m| m[idx])
    }

    pub fn slice_range(&self, nt: usize) -> Range<usize> {
        if self.interior_slices && nt > 2 {
            1..nt - 1
        } else {
            0..nt
        }
    }
}

/// Separable `C^∞` window equal to 1 for `|x_i| <= inner` and 0 for `|x_i| >= outer`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWindow {
    pub inner: f64,
    pub outer: f64,
}

impl SmoothWindow {
    pub fn new(inner: f64, outer: f64) -> Self {
        assert!(0.0 < inner && inner < outer, "window needs 0 < inner < outer");
        Self { inner, outer }
    }

    /// Window whose plateau and support scale with the box: plateau `L/4`,
    /// support `0.45 L` on each axis.
    pub fn for_grid(grid: &SpatialGrid) -> Self {
        Self::new(0.25 * grid.length(), 0.45 * grid.length())
    }

    pub fn value(&self, x: [f64; 3]) -> f64 {
        x.iter().map(|&c| self.step(c.abs())).product()
    }

    fn step(&self, r: f64) -> f64 {
        if r <= self.inner {
            return 1.0;
        }
        if r >= self.outer {
            return 0.0;
        }
        let t = (self.outer - r) / (self.outer - self.inner);
        let a = bump(t);
        let b = bump(1.0 - t);
        a / (a + b)
    }

    /// Nodes on the plateau with `margin` grid cells to spare.
    pub fn plateau(&self, grid: &SpatialGrid, margin: usize) -> Region {
        Region::all().within_cube(grid, self.inner - margin as f64 * grid.spacing())
    }
}

fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}
