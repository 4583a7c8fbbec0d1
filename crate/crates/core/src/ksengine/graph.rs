use std::fmt::Write as _;

use crate::specmodel::Point;

/// Graph on the minimal primes of a support, with an edge whenever the
/// closures of two vertices meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
}

impl SupportGraph {
    /// `edges` are index pairs into `vertices`; each is stored once with the
    /// smaller index first and self-loops are dropped.
    pub fn new(vertices: Vec<Point>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        SupportGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a == b || self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Connected components as sorted vertex index lists, ordered by their
    /// least index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for v in 0..self.vertices.len() {
            by_root[uf.find(v)].push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Graphviz rendering with one cluster per connected component.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph support {\n");
        for (k, comp) in self.components().iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{k} {{");
            let _ = writeln!(out, "    label=\"component {k}\";");
            for &v in comp {
                let _ = writeln!(out, "    v{v} [label={}];", quote(&self.vertices[v].to_string()));
            }
            out.push_str("  }\n");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
