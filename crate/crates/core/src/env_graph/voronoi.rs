//! Voronoi cells of point sites clipped to a bounding rectangle.
//!
//! Each cell is computed directly as the intersection of the bounding box
//! with the halfplanes of the bisectors against every other site. Quadratic
//! in the number of sites, which is fine at roadmap scale, and produces the
//! per-site cell polygons the smoothing stage wants anyway.

use crate::geom::{clip_halfplane, Rect, Vec2};
use crate::real::{lit, Real};

#[derive(Clone, Debug)]
pub struct Cell<T> {
    pub site: usize,
    /// Convex polygon in counter-clockwise order.
    pub polygon: Vec<Vec2<T>>,
}

/// Clipped Voronoi cell of every site.
pub fn voronoi_cells<T: Real>(sites: &[Vec2<T>], bounds: &Rect<T>) -> Vec<Cell<T>> {
    let eps = lit::<T>(1e-12);
    let mut cells = Vec::with_capacity(sites.len());
    for (i, &si) in sites.iter().enumerate() {
        let mut poly = bounds.polygon();
        for (j, &sj) in sites.iter().enumerate() {
            if i == j || poly.is_empty() {
                continue;
            }
            let dir = sj - si;
            if dir.norm_sq() <= eps {
                continue; // coincident sites share a cell
            }
            let mid = (si + sj) * lit::<T>(0.5);
            poly = clip_halfplane(&poly, mid, dir);
        }
        cells.push(Cell { site: i, polygon: poly });
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = Vec2<f64>;

    #[test]
    fn two_sites_split_the_box() {
        let bounds = Rect::new(V::new(0.0, 0.0), V::new(4.0, 2.0));
        let cells = voronoi_cells(&[V::new(1.0, 1.0), V::new(3.0, 1.0)], &bounds);
        // left cell is the half-box x <= 2
        for p in &cells[0].polygon {
            assert!(p.x <= 2.0 + 1e-12);
        }
        for p in &cells[1].polygon {
            assert!(p.x >= 2.0 - 1e-12);
        }
    }

    #[test]
    fn four_corner_sites_meet_at_center() {
        let bounds = Rect::new(V::new(-1.0, -1.0), V::new(2.0, 2.0));
        let sites = [
            V::new(0.0, 0.0),
            V::new(1.0, 0.0),
            V::new(1.0, 1.0),
            V::new(0.0, 1.0),
        ];
        let cells = voronoi_cells(&sites, &bounds);
        for cell in &cells {
            let has_center = cell
                .polygon
                .iter()
                .any(|p| p.dist(V::new(0.5, 0.5)) < 1e-9);
            assert!(has_center, "cell {} misses the center", cell.site);
        }
    }
}
