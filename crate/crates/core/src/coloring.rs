// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Partial proper edge colorings.
//!
//! Colors are the integers `1..=t` where `t` is the palette size carried by
//! the coloring. Uncolored edges are absent from the assignment; there is no
//! color 0.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

pub type Color = u32;

/// Largest palette representable by a [`ColorSet`].
pub const MAX_PALETTE: u32 = 63;

/// A set of colors in `1..=63`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1, ..., t}`.
    pub fn full(t: u32) -> Self {
        debug_assert!(t <= MAX_PALETTE);
        ColorSet(((1u64 << t) - 1) << 1)
    }

    pub fn single(c: Color) -> Self {
        ColorSet(1 << c)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Self {
        ColorSet(bits & !1)
    }

    pub fn contains(self, c: Color) -> bool {
        c <= MAX_PALETTE && self.0 & (1 << c) != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1 << c);
    }

    pub fn with(self, c: Color) -> Self {
        ColorSet(self.0 | 1 << c)
    }

    pub fn without(self, c: Color) -> Self {
        ColorSet(self.0 & !(1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest color in the set.
    pub fn first(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    /// Colors in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros();
            bits &= bits - 1;
            Some(c)
        })
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A palette size together with a partial map from edges to colors.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialEdgeColoring {
    graph: Arc<Graph>,
    palette: u32,
    colors: Vec<Option<Color>>,
}

impl fmt::Debug for PartialEdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self
            .colored()
            .map(|(e, c)| (self.graph.endpoints(e), c))
            .collect();
        f.debug_struct("PartialEdgeColoring")
            .field("palette", &self.palette)
            .field("colored", &pairs)
            .finish()
    }
}

fn check_palette(palette: u32) -> Result<()> {
    if palette == 0 || palette > MAX_PALETTE {
        return Err(Error::InvalidParameter(format!(
            "palette {palette} outside 1..={MAX_PALETTE}"
        )));
    }
    Ok(())
}

impl PartialEdgeColoring {
    pub fn empty(graph: Arc<Graph>, palette: u32) -> Result<Self> {
        check_palette(palette)?;
        let m = graph.edge_count();
        Ok(PartialEdgeColoring { graph, palette, colors: vec![None; m] })
    }

    /// Coloring from one optional color per edge. Colors are range checked;
    /// properness is not (see [`PartialEdgeColoring::ensure_proper`]).
    pub fn from_colors(graph: Arc<Graph>, palette: u32, colors: Vec<Option<Color>>) -> Result<Self> {
        check_palette(palette)?;
        if colors.len() != graph.edge_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} edges",
                colors.len(),
                graph.edge_count()
            )));
        }
        if let Some((e, c)) = colors
            .iter()
            .enumerate()
            .find_map(|(e, c)| c.filter(|&c| c == 0 || c > palette).map(|c| (e, c)))
        {
            let (u, v) = graph.endpoints(e);
            return Err(Error::InvalidColoring(format!(
                "edge ({u},{v}) has color {c} outside 1..={palette}"
            )));
        }
        Ok(PartialEdgeColoring { graph, palette, colors })
    }

    pub fn from_pairs(graph: Arc<Graph>, palette: u32, pairs: &[(EdgeId, Color)]) -> Result<Self> {
        let mut colors = vec![None; graph.edge_count()];
        for &(e, c) in pairs {
            if e >= colors.len() {
                return Err(Error::InvalidColoring(format!("edge id {e} out of range")));
            }
            colors[e] = Some(c);
        }
        Self::from_colors(graph, palette, colors)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn get(&self, e: EdgeId) -> Option<Color> {
        self.colors[e]
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// `(edge, color)` for every colored edge, in canonical edge order.
    pub fn colored(&self) -> impl Iterator<Item = (EdgeId, Color)> + '_ {
        self.colors.iter().enumerate().filter_map(|(e, c)| c.map(|c| (e, c)))
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Returns a copy with `e` colored `c` (range checked only).
    pub fn with(&self, e: EdgeId, c: Color) -> Result<Self> {
        if c == 0 || c > self.palette {
            return Err(Error::InvalidColoring(format!("color {c} outside 1..={}", self.palette)));
        }
        let mut next = self.clone();
        next.colors[e] = Some(c);
        Ok(next)
    }

    pub fn without(&self, e: EdgeId) -> Self {
        let mut next = self.clone();
        next.colors[e] = None;
        next
    }

    /// Same assignment over a different palette size.
    pub fn with_palette(&self, palette: u32) -> Result<Self> {
        Self::from_colors(self.graph.clone(), palette, self.colors.clone())
    }

    /// Colors on edges incident with `v`.
    pub fn colors_at(&self, v: VertexId) -> ColorSet {
        self.graph.incident_edges(v).filter_map(|e| self.colors[e]).collect()
    }

    /// Palette colors that do not appear at `v`.
    pub fn missing_colors(&self, v: VertexId) -> ColorSet {
        ColorSet::full(self.palette).difference(self.colors_at(v))
    }

    /// Colored edges in canonical order.
    pub fn precolored_edges(&self) -> Vec<EdgeId> {
        self.colored().map(|(e, _)| e).collect()
    }

    /// Whether the colored edges form a matching.
    pub fn is_independent(&self) -> bool {
        let mut seen = vec![false; self.graph.vertex_count()];
        for (e, _) in self.colored() {
            let (u, v) = self.graph.endpoints(e);
            if seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }

    /// Distinct colors in use.
    pub fn used_colors(&self) -> ColorSet {
        self.colors.iter().flatten().copied().collect()
    }

    /// First vertex (in id order) where a color repeats, with that color.
    pub fn find_conflict(&self) -> Option<(VertexId, Color)> {
        for v in 0..self.graph.vertex_count() {
            let mut seen = ColorSet::EMPTY;
            for e in self.graph.incident_edges(v) {
                if let Some(c) = self.colors[e] {
                    if seen.contains(c) {
                        return Some((v, c));
                    }
                    seen.insert(c);
                }
            }
        }
        None
    }

    pub fn is_proper(&self) -> bool {
        self.find_conflict().is_none()
    }

    pub fn ensure_proper(&self) -> Result<()> {
        match self.find_conflict() {
            Some((vertex, color)) => Err(Error::ImproperColoring { vertex, color }),
            None => Ok(()),
        }
    }

    pub fn same_graph(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || *self.graph == *other.graph
    }

    /// Whether `self` is total and equals `pre` on every edge `pre` colors.
    pub fn agrees_with(&self, pre: &PartialEdgeColoring) -> Result<bool> {
        if !self.same_graph(pre) {
            return Err(Error::GraphMismatch);
        }
        Ok(self.is_total()
            && pre.colored().all(|(e, c)| self.colors[e] == Some(c)))
    }

    /// `pi ∘ self`.
    pub fn permuted(&self, pi: &ColorPermutation) -> Result<Self> {
        if pi.palette() != self.palette {
            return Err(Error::InvalidParameter(format!(
                "permutation on {} colors applied to palette {}",
                pi.palette(),
                self.palette
            )));
        }
        let colors = self.colors.iter().map(|c| c.map(|c| pi.apply(c))).collect();
        Ok(PartialEdgeColoring { graph: self.graph.clone(), palette: self.palette, colors })
    }
}

/// A bijection on `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorPermutation {
    images: Vec<Color>,
}

impl ColorPermutation {
    pub fn identity(t: u32) -> Self {
        ColorPermutation { images: (1..=t).collect() }
    }

    /// `images[i]` is the image of color `i + 1`.
    pub fn from_images(images: Vec<Color>) -> Result<Self> {
        let t = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &c in &images {
            if c == 0 || c > t || seen[(c - 1) as usize] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
            seen[(c - 1) as usize] = true;
        }
        Ok(ColorPermutation { images })
    }

    pub fn palette(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, c: Color) -> Color {
        self.images[(c - 1) as usize]
    }

    pub fn images(&self) -> &[Color] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &c) in self.images.iter().enumerate() {
            inv[(c - 1) as usize] = i as Color + 1;
        }
        ColorPermutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        ColorPermutation { images: other.images.iter().map(|&c| self.apply(c)).collect() }
    }
}

/// Relabels colors so that the used ones become `1, 2, ...` in order of first
/// appearance along the canonical edge order.
///
/// Unused colors are mapped, in increasing order, onto the remaining targets.
/// An extension of the normalized coloring pulls back to an extension of `c`
/// through the inverse permutation. The relabeling is what lets the prism
/// extenders assume the precolored edges use colors `1..=r`; it is valid
/// because every theorem they implement bounds the number of precolored
/// edges, and hence of used colors, by `r`.
pub fn normalize_colors(c: &PartialEdgeColoring, r: u32) -> Result<(PartialEdgeColoring, ColorPermutation)> {
    let t = c.palette();
    if r > t {
        return Err(Error::InvalidParameter(format!("target range {r} exceeds palette {t}")));
    }
    let mut images = vec![0; t as usize];
    let mut next = 1;
    for (_, col) in c.colored() {
        if images[(col - 1) as usize] == 0 {
            if next > r {
                return Err(Error::InvalidParameter(format!(
                    "more than {r} distinct colors in use"
                )));
            }
            images[(col - 1) as usize] = next;
            next += 1;
        }
    }
    for slot in images.iter_mut().filter(|s| **s == 0) {
        *slot = next;
        next += 1;
    }
    let pi = ColorPermutation::from_images(images)?;
    Ok((c.permuted(&pi)?, pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cycle, build_path, build_star};
    use proptest::prelude::*;

    fn arc(g: Graph) -> Arc<Graph> {
        Arc::new(g)
    }

    #[test]
    fn properness() {
        let c4 = arc(build_cycle(4).unwrap());
        // (0,1) and (2,3) are opposite
        let c = PartialEdgeColoring::from_pairs(c4.clone(), 2, &[(0, 1), (3, 1)]).unwrap();
        assert!(c.is_proper());
        let p3 = arc(build_path(3).unwrap());
        let bad = PartialEdgeColoring::from_pairs(p3.clone(), 2, &[(0, 1), (1, 1)]).unwrap();
        assert!(!bad.is_proper());
        assert_eq!(bad.ensure_proper(), Err(Error::ImproperColoring { vertex: 1, color: 1 }));
        assert!(PartialEdgeColoring::empty(p3, 2).unwrap().is_proper());
    }

    #[test]
    fn colors_at_vertices() {
        let star = arc(build_star(3).unwrap());
        let c = PartialEdgeColoring::from_pairs(star.clone(), 3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(c.colors_at(0), ColorSet::from_iter([1, 2]));
        let c4 = c.with_palette(4).unwrap();
        assert_eq!(c4.missing_colors(0), ColorSet::from_iter([3, 4]));
        assert_eq!(c4.missing_colors(3), ColorSet::full(4));
    }

    #[test]
    fn independence() {
        let p3 = arc(build_path(3).unwrap());
        let c = PartialEdgeColoring::from_pairs(p3.clone(), 2, &[(0, 1), (1, 2)]).unwrap();
        assert!(!c.is_independent());
        assert!(PartialEdgeColoring::empty(p3, 2).unwrap().is_independent());
        let c6 = arc(build_cycle(6).unwrap());
        let m: Vec<_> = [(0, 1), (2, 3), (4, 5)]
            .iter()
            .map(|&(u, v)| (c6.edge_id(u, v).unwrap(), 1))
            .collect();
        let pm = PartialEdgeColoring::from_pairs(c6, 2, &m).unwrap();
        assert!(pm.is_independent());
        assert_eq!(pm.precolored_edges().len(), 3);
    }

    #[test]
    fn normalization() {
        let p3 = arc(build_path(4).unwrap());
        let c = PartialEdgeColoring::from_pairs(p3.clone(), 5, &[(0, 5), (2, 2)]).unwrap();
        let (n, pi) = normalize_colors(&c, 2).unwrap();
        assert_eq!(n.get(0), Some(1));
        assert_eq!(n.get(2), Some(2));
        assert_eq!(n.permuted(&pi.inverse()).unwrap(), c);

        let d = PartialEdgeColoring::from_pairs(p3.clone(), 3, &[(0, 2), (2, 1)]).unwrap();
        let (n, _) = normalize_colors(&d, 2).unwrap();
        assert_eq!((n.get(0), n.get(2)), (Some(1), Some(2)));

        let three = PartialEdgeColoring::from_pairs(p3, 3, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(normalize_colors(&three, 2).is_err());
    }

    #[test]
    fn agreement() {
        let p3 = arc(build_path(3).unwrap());
        let pre = PartialEdgeColoring::from_pairs(p3.clone(), 2, &[(0, 1)]).unwrap();
        let full = PartialEdgeColoring::from_pairs(p3.clone(), 2, &[(0, 1), (1, 2)]).unwrap();
        assert!(full.agrees_with(&pre).unwrap());
        let other = PartialEdgeColoring::from_pairs(p3.clone(), 2, &[(0, 2), (1, 1)]).unwrap();
        assert!(!other.agrees_with(&pre).unwrap());
        assert!(!pre.agrees_with(&pre).unwrap());
        let c4 = PartialEdgeColoring::empty(arc(build_cycle(4).unwrap()), 2).unwrap();
        assert_eq!(full.agrees_with(&c4), Err(Error::GraphMismatch));
    }

    #[test]
    fn color_set_basics() {
        let s = ColorSet::full(4).without(2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.len(), 3);
        assert!(ColorSet::EMPTY.first().is_none());
    }

    proptest! {
        #[test]
        fn permutation_round_trip(seed in any::<u64>(), t in 2u32..7) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut images: Vec<Color> = (1..=t).collect();
            images.shuffle(&mut rng);
            let pi = ColorPermutation::from_images(images).unwrap();
            prop_assert_eq!(pi.compose(&pi.inverse()), ColorPermutation::identity(t));

            let g = arc(build_cycle(6).unwrap());
            let mut colors = vec![None; 6];
            colors[0] = Some(1);
            colors[3] = Some(t);
            let c = PartialEdgeColoring::from_colors(g, t, colors).unwrap();
            let p = c.permuted(&pi).unwrap();
            prop_assert_eq!(p.is_proper(), c.is_proper());
            prop_assert_eq!(p.permuted(&pi.inverse()).unwrap(), c.clone());
            let (n, nu) = normalize_colors(&c, 2).unwrap();
            prop_assert_eq!(n.permuted(&nu.inverse()).unwrap(), c);
        }
    }
}
