//! Maximum clique by bitset branch-and-bound with greedy-coloring bounds.
//!
//! A maximum independent set of a conflict graph is a maximum clique of its
//! complement; callers build whichever adjacency is the compatibility
//! relation and search cliques in it.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Bitset {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Bitset {
        let mut b = Bitset::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Best clique found, as vertex indices in increasing order.
    pub clique: Vec<usize>,
    /// Whether the search finished within budget.
    pub exact: bool,
    /// Proven upper bound on the clique number; equals `clique.len()` when
    /// exact.
    pub upper_bound: usize,
    pub nodes: u64,
}

struct Search<'a> {
    adj: &'a [Bitset],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    /// Greedy sequential coloring of `p`; vertices listed by color class with
    /// the running color count as a bound.
    fn color_sort(&self, p: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.and_not_assign(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bitset) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let (order, bounds) = self.color_sort(&p);
        for idx in (0..order.len()).rev() {
            if r.len() + bounds[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            r.push(v);
            let np = p.and(&self.adj[v]);
            if np.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np);
            }
            r.pop();
            if self.aborted {
                return;
            }
            p.remove(v);
        }
    }
}

/// Maximum clique of the graph with adjacency rows `adj` (symmetric, no
/// self-loops), visiting at most `budget` search nodes. Ties between optimal
/// cliques resolve deterministically.
pub fn max_clique(adj: &[Bitset], budget: u64) -> CliqueOutcome {
    let n = adj.len();
    if n == 0 {
        return CliqueOutcome {
            clique: Vec::new(),
            exact: true,
            upper_bound: 0,
            nodes: 0,
        };
    }
    let mut search = Search {
        adj,
        best: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    let all = Bitset::full(n);
    let (_, root_bounds) = search.color_sort(&all);
    let root_bound = root_bounds.last().copied().unwrap_or(0);
    let mut r = Vec::new();
    search.expand(&mut r, all);
    let mut clique = search.best;
    clique.sort_unstable();
    let exact = !search.aborted;
    CliqueOutcome {
        upper_bound: if exact { clique.len() } else { root_bound.max(clique.len()) },
        clique,
        exact,
        nodes: search.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Bitset> {
        let mut adj = vec![Bitset::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn bitset_basics() {
        let mut b = Bitset::new(130);
        for i in [0, 63, 64, 129] {
            b.insert(i);
        }
        assert_eq!(b.count(), 4);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        b.remove(0);
        assert_eq!(b.first(), Some(63));
    }

    #[test]
    fn small_graphs() {
        assert_eq!(max_clique(&[], 10).clique, Vec::<usize>::new());
        let tri_plus = graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
        let out = max_clique(&tri_plus, 1000);
        assert!(out.exact);
        assert_eq!(out.clique, vec![0, 1, 2]);
        let empty = graph(4, &[]);
        assert_eq!(max_clique(&empty, 1000).clique.len(), 1);
    }

    #[test]
    fn budget_gives_bracket() {
        // complete graph on 40 vertices minus a perfect matching: clique number 20
        let mut edges = Vec::new();
        for a in 0..40 {
            for b in a + 1..40 {
                if !(a % 2 == 0 && b == a + 1) {
                    edges.push((a, b));
                }
            }
        }
        let g = graph(40, &edges);
        let out = max_clique(&g, 3);
        assert!(!out.exact);
        assert!(out.clique.len() <= 20 && out.upper_bound >= 20);
        let full = max_clique(&g, u64::MAX);
        assert!(full.exact);
        assert_eq!(full.clique.len(), 20);
    }
}
