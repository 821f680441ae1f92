use crate::error::{Error, Result};

/// Convex polygon, vertices counterclockwise, no three retained vertices collinear.
#[derive(Debug, Clone, PartialEq)]
pub struct Hull {
    vertices: Vec<[f64; 2]>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl Hull {
    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    /// Whether `p` lies within distance `tol` of the polygon.
    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => dist(self.vertices[0], p) <= tol,
            2 => segment_distance(self.vertices[0], self.vertices[1], p) <= tol,
            m => (0..m).all(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % m];
                cross(a, b, p) / dist(a, b) >= -tol
            }),
        }
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn segment_distance(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist(a, p);
    }
    let t = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist([a[0] + t * ab[0], a[1] + t * ab[1]], p)
}

fn polygon_area(v: &[[f64; 2]]) -> f64 {
    if v.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..v.len() {
        let a = v[i];
        let b = v[(i + 1) % v.len()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s
}

/// Andrew's monotone chain. Collinear points are dropped; all-collinear input
/// gives the two extreme points.
pub fn convex_hull(points: &[[f64; 2]]) -> Hull {
    let mut pts: Vec<[f64; 2]> = points.iter().copied().filter(|p| p[0].is_finite() && p[1].is_finite()).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return Hull { vertices: pts };
    }
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Hull { vertices: lower }
}

/// Clips the convex polygon `subject` to the half-plane left of `a → b`.
fn clip(subject: &[[f64; 2]], a: [f64; 2], b: [f64; 2]) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(subject.len() + 1);
    for i in 0..subject.len() {
        let p = subject[i];
        let q = subject[(i + 1) % subject.len()];
        let cp = cross(a, b, p);
        let cq = cross(a, b, q);
        if cp >= 0.0 {
            out.push(p);
        }
        if (cp >= 0.0) != (cq >= 0.0) {
            let t = cp / (cp - cq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

fn intersection_area(a: &Hull, b: &Hull) -> f64 {
    let mut poly = a.vertices.clone();
    let m = b.vertices.len();
    for i in 0..m {
        if poly.is_empty() {
            return 0.0;
        }
        poly = clip(&poly, b.vertices[i], b.vertices[(i + 1) % m]);
    }
    polygon_area(&poly).max(0.0)
}

/// Symmetric-difference area over union area, in `[0, 1]`.
pub fn hull_compare(a: &Hull, b: &Hull) -> Result<f64> {
    for h in [a, b] {
        if h.is_degenerate() || h.area() <= 0.0 {
            return Err(Error::DegenerateHull { vertices: h.vertices.len() });
        }
    }
    let inter = intersection_area(a, b);
    let union = a.area() + b.area() - inter;
    Ok(((union - inter) / union).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn square_hull() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let h = convex_hull(&pts);
        assert_eq!(h.vertices().len(), 4);
        assert_abs_diff_eq!(h.area(), 1.0, epsilon = 1e-15);
        assert!(h.contains([0.5, 0.5], 0.0));
        assert!(h.contains([1.0 + 1e-9, 0.5], 1e-6));
        assert!(!h.contains([1.1, 0.5], 1e-6));
    }

    #[test]
    fn collinear_hull_is_degenerate() {
        let pts = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [0.5, 0.5]];
        let h = convex_hull(&pts);
        assert_eq!(h.vertices(), &[[0.0, 0.0], [2.0, 2.0]]);
        assert_eq!(h.area(), 0.0);
        assert!(h.contains([1.0, 1.0], 1e-12));
        assert!(matches!(hull_compare(&h, &h), Err(Error::DegenerateHull { .. })));
    }

    #[test]
    fn hull_is_counterclockwise_and_strictly_convex() {
        let pts: Vec<[f64; 2]> = (0..200)
            .map(|k| {
                let t = k as f64 * 0.7;
                [t.cos() * (1.0 + 0.1 * (3.0 * t).sin()), t.sin()]
            })
            .collect();
        let h = convex_hull(&pts);
        let v = h.vertices();
        for i in 0..v.len() {
            assert!(cross(v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]) > 0.0);
        }
    }

    #[test]
    fn compare_examples() {
        let a = convex_hull(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert_eq!(hull_compare(&a, &a).unwrap(), 0.0);
        let b = convex_hull(&[[0.5, 0.0], [1.5, 0.0], [1.5, 1.0], [0.5, 1.0]]);
        // overlap 0.5, union 1.5
        assert_abs_diff_eq!(hull_compare(&a, &b).unwrap(), 1.0 / 1.5, epsilon = 1e-12);
        let far = convex_hull(&[[5.0, 5.0], [6.0, 5.0], [6.0, 6.0]]);
        assert_abs_diff_eq!(hull_compare(&a, &far).unwrap(), 1.0, epsilon = 1e-12);
    }
}
