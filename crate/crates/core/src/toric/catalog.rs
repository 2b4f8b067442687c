use std::collections::HashSet;
use std::path::Path;

use super::ToricError;

/// Catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../../data/toric_catalog.txt");

/// Names in the default catalog, in file order.
pub const CATALOG_NAMES: [&str; 8] = ["C3", "conifold", "SPP", "F0", "dP0", "dP1", "dP2", "dP3"];

/// Lattice points of a toric diagram, in coefficient order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDiagram {
    pub name: String,
    pub points: Vec<(i64, i64)>,
}

impl ToricDiagram {
    pub fn new(name: impl Into<String>, points: Vec<(i64, i64)>) -> Result<Self, ToricError> {
        let name = name.into();
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(*p) {
                return Err(ToricError::DuplicatePoint { diagram: name, point: *p });
            }
        }
        Ok(Self { name, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Vertices of the convex hull, counter-clockwise, collinear points dropped.
    pub fn hull(&self) -> Vec<(i64, i64)> {
        let mut pts = self.points.clone();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 3 {
            return pts;
        }
        let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
            (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
        };
        let mut lower: Vec<(i64, i64)> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(i64, i64)> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    }

    /// Twice the area of the convex hull (an integer for lattice polygons).
    pub fn hull_area2(&self) -> i128 {
        let h = self.hull();
        if h.len() < 3 {
            return 0;
        }
        (0..h.len())
            .map(|i| {
                let (a, b) = (h[i], h[(i + 1) % h.len()]);
                a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
            })
            .sum::<i128>()
            .abs()
    }
}

/// Parses catalog text: `name:` lines open a block, `x y` lines add points,
/// `#` starts a comment.
pub fn parse_catalog(text: &str) -> Result<Vec<ToricDiagram>, ToricError> {
    let mut out = Vec::new();
    let mut current: Option<(String, Vec<(i64, i64)>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("name:") {
            if let Some((n, pts)) = current.take() {
                out.push(ToricDiagram::new(n, pts)?);
            }
            let name = name.trim();
            if name.is_empty() {
                return Err(ToricError::CatalogParse { line: i + 1, msg: "empty diagram name".into() });
            }
            current = Some((name.to_string(), Vec::new()));
            continue;
        }
        let Some((_, pts)) = current.as_mut() else {
            return Err(ToricError::CatalogParse { line: i + 1, msg: "point before any `name:` line".into() });
        };
        let nums: Vec<&str> = line.split_whitespace().collect();
        let parsed: Result<Vec<i64>, _> = nums.iter().map(|t| t.parse::<i64>()).collect();
        match parsed {
            Ok(v) if v.len() == 2 => pts.push((v[0], v[1])),
            _ => {
                return Err(ToricError::CatalogParse {
                    line: i + 1,
                    msg: format!("expected two integers, found {line:?}"),
                })
            }
        }
    }
    if let Some((n, pts)) = current {
        out.push(ToricDiagram::new(n, pts)?);
    }
    Ok(out)
}

pub fn load_catalog(path: &Path) -> Result<Vec<ToricDiagram>, ToricError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ToricError::CatalogParse { line: 0, msg: format!("{}: {e}", path.display()) })?;
    parse_catalog(&text)
}

/// Looks `name` up in the default catalog.
pub fn catalog(name: &str) -> Result<ToricDiagram, ToricError> {
    find(&parse_catalog(DEFAULT_CATALOG)?, name)
}

/// Looks `name` up in a parsed catalog (exact match first, then case-insensitive).
pub fn find(diagrams: &[ToricDiagram], name: &str) -> Result<ToricDiagram, ToricError> {
    diagrams
        .iter()
        .find(|d| d.name == name)
        .or_else(|| diagrams.iter().find(|d| d.name.eq_ignore_ascii_case(name)))
        .cloned()
        .ok_or_else(|| ToricError::UnknownDiagram(name.to_string()))
}
