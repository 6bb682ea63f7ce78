//! Per-colour connected components of a partial edge colouring.

/// One union-find forest per colour over the vertex set.
///
/// Colours are 1-based and vertices 0-based here; this is an internal
/// structure of edge-family positions. Components only ever merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourComponents {
    n: usize,
    colours: usize,
    parent: Vec<u8>,
    rank: Vec<u8>,
}

impl ColourComponents {
    pub fn new(n: usize, colours: usize) -> Self {
        let parent = (0..colours).flat_map(|_| 0..n as u8).collect();
        Self { n, colours, parent, rank: vec![0; n * colours] }
    }

    pub fn colours(&self) -> usize {
        self.colours
    }

    fn slot(&self, colour: usize) -> usize {
        debug_assert!((1..=self.colours).contains(&colour));
        (colour - 1) * self.n
    }

    pub fn find(&self, colour: usize, v: usize) -> usize {
        let base = self.slot(colour);
        let mut v = v;
        loop {
            let p = self.parent[base + v] as usize;
            if p == v {
                return v;
            }
            v = p;
        }
    }

    /// True iff `u` and `v` are joined by a path of `colour` edges.
    pub fn same(&self, colour: usize, u: usize, v: usize) -> bool {
        self.find(colour, u) == self.find(colour, v)
    }

    /// Merges the `colour`-components of `u` and `v`; false if already merged.
    pub fn union(&mut self, colour: usize, u: usize, v: usize) -> bool {
        let (a, b) = (self.find(colour, u), self.find(colour, v));
        if a == b {
            return false;
        }
        let base = self.slot(colour);
        let (lo, hi) = if self.rank[base + a] < self.rank[base + b] { (a, b) } else { (b, a) };
        self.parent[base + lo] = hi as u8;
        if self.rank[base + lo] == self.rank[base + hi] {
            self.rank[base + hi] += 1;
        }
        true
    }

    /// Component label of every vertex for `colour` (the root vertex).
    pub fn labels(&self, colour: usize) -> Vec<usize> {
        (0..self.n).map(|v| self.find(colour, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_per_colour() {
        let mut cc = ColourComponents::new(4, 2);
        assert!(cc.union(1, 0, 1));
        assert!(cc.union(1, 1, 2));
        assert!(!cc.union(1, 0, 2));
        assert!(cc.same(1, 0, 2));
        assert!(!cc.same(2, 0, 2));
        assert!(!cc.same(1, 0, 3));
        assert!(cc.union(2, 2, 3));
        assert!(cc.same(2, 3, 2));
    }
}
