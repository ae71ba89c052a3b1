use crate::operators::Lattice;

/// Edge-color table: `at[v][c]` is the neighbour joined to `v` by color `c`.
struct Table {
    at: Vec<Vec<Option<usize>>>,
}

impl Table {
    fn new(sites: usize, colors: usize) -> Self {
        Table {
            at: vec![vec![None; colors]; sites],
        }
    }

    fn free(&self, v: usize, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn first_free(&self, v: usize) -> usize {
        self.at[v].iter().position(Option::is_none).expect("palette has a free color")
    }

    fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        self.at[u].iter().position(|&x| x == Some(v))
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        self.at[u][c] = Some(v);
        self.at[v][c] = Some(u);
    }

    fn clear(&mut self, u: usize, v: usize) {
        if let Some(c) = self.color_of(u, v) {
            self.at[u][c] = None;
            self.at[v][c] = None;
        }
    }

    /// Swaps colors `a` and `b` along the alternating path leaving `start` on color `a`.
    fn flip_path(&mut self, start: usize, a: usize, b: usize) {
        let mut path = Vec::new();
        let (mut v, mut c) = (start, a);
        while let Some(w) = self.at[v][c] {
            path.push((v, w, c));
            v = w;
            c = if c == a { b } else { a };
        }
        for &(u, w, _) in &path {
            self.clear(u, w);
        }
        for &(u, w, c) in &path {
            self.set(u, w, if c == a { b } else { a });
        }
    }

    fn classes(&self, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
        let colors = self.at.first().map_or(0, Vec::len);
        let mut out = vec![Vec::new(); colors];
        for &(u, v) in edges {
            out[self.color_of(u, v).expect("every edge colored")].push((u, v));
        }
        out.retain(|c| !c.is_empty());
        out
    }
}

fn adjacency(lat: &Lattice) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); lat.sites];
    for &(a, b) in &lat.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn is_bipartite(lat: &Lattice) -> bool {
    let adj = adjacency(lat);
    let mut side = vec![None; lat.sites];
    for s in 0..lat.sites {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for &w in &adj[v] {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        stack.push(w);
                    }
                    Some(sw) if sw == sv => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Bipartite graphs are class one: color each edge with a color free at one
/// end, flipping an alternating path when the ends disagree.
fn bipartite_coloring(lat: &Lattice, delta: usize) -> Table {
    let mut t = Table::new(lat.sites, delta);
    for &(u, v) in &lat.edges {
        let a = t.first_free(u);
        if !t.free(v, a) {
            let b = t.first_free(v);
            // the path from v alternating a/b cannot reach u in a bipartite graph
            t.flip_path(v, a, b);
        }
        t.set(u, v, a);
    }
    t
}

/// Misra-Gries fan rotation: at most `delta + 1` colors on any simple graph.
fn misra_gries(lat: &Lattice, delta: usize) -> Table {
    let adj = adjacency(lat);
    let mut t = Table::new(lat.sites, delta + 1);
    for &(u, v) in &lat.edges {
        // maximal fan of u starting at v
        let mut fan = vec![v];
        loop {
            let last = *fan.last().unwrap();
            let next = adj[u].iter().copied().find(|&x| {
                !fan.contains(&x) && t.color_of(u, x).is_some_and(|c| t.free(last, c))
            });
            match next {
                Some(x) => fan.push(x),
                None => break,
            }
        }
        let c = t.first_free(u);
        let d = t.first_free(*fan.last().unwrap());
        if c != d {
            t.flip_path(u, d, c);
        }
        // first fan vertex with d free such that the prefix is still a fan
        let mut w = fan.len() - 1;
        for i in 0..fan.len() {
            if t.free(fan[i], d) {
                w = i;
                break;
            }
            let still_fan = i + 1 < fan.len()
                && t.color_of(u, fan[i + 1]).is_some_and(|col| t.free(fan[i], col));
            if !still_fan {
                break;
            }
        }
        for i in 0..w {
            let col = t.color_of(u, fan[i + 1]).expect("fan edges are colored");
            t.clear(u, fan[i + 1]);
            t.set(u, fan[i], col);
        }
        t.set(u, fan[w], d);
    }
    t
}

/// Backtracking search for a proper coloring of the edges with `colors`
/// colors, most-constrained edge first. Gives up after `budget` steps.
fn exact_coloring(lat: &Lattice, colors: usize, budget: usize) -> Option<Table> {
    let m = lat.edges.len();
    let mut assignment: Vec<Option<usize>> = vec![None; m];
    let mut t = Table::new(lat.sites, colors);
    let mut steps = 0usize;

    fn available(t: &Table, e: (usize, usize), colors: usize) -> Vec<usize> {
        (0..colors).filter(|&c| t.free(e.0, c) && t.free(e.1, c)).collect()
    }

    fn search(
        lat: &Lattice,
        t: &mut Table,
        assignment: &mut [Option<usize>],
        colors: usize,
        steps: &mut usize,
        budget: usize,
    ) -> bool {
        *steps += 1;
        if *steps > budget {
            return false;
        }
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for (i, &e) in lat.edges.iter().enumerate() {
            if assignment[i].is_some() {
                continue;
            }
            let avail = available(t, e, colors);
            if avail.is_empty() {
                return false;
            }
            if pick.as_ref().is_none_or(|(_, a)| avail.len() < a.len()) {
                pick = Some((i, avail));
            }
        }
        let Some((i, avail)) = pick else {
            return true;
        };
        let (u, v) = lat.edges[i];
        for c in avail {
            t.set(u, v, c);
            assignment[i] = Some(c);
            if search(lat, t, assignment, colors, steps, budget) {
                return true;
            }
            t.clear(u, v);
            assignment[i] = None;
        }
        false
    }

    search(lat, &mut t, &mut assignment, colors, &mut steps, budget).then_some(t)
}

/// Partition of the lattice edges into matchings.
///
/// Bipartite graphs get exactly `max_degree` classes. Other graphs get a
/// Misra-Gries coloring (at most `max_degree + 1` classes), improved to
/// `max_degree` classes when a bounded exact search finds one.
pub fn edge_coloring(lat: &Lattice) -> Vec<Vec<(usize, usize)>> {
    let delta = lat.max_degree();
    if delta == 0 {
        return Vec::new();
    }
    if is_bipartite(lat) {
        return bipartite_coloring(lat, delta).classes(&lat.edges);
    }
    let mg = misra_gries(lat, delta).classes(&lat.edges);
    if mg.len() > delta {
        if let Some(t) = exact_coloring(lat, delta, 200_000) {
            return t.classes(&lat.edges);
        }
    }
    mg
}

/// Every lattice edge appears in exactly one class and no class has two edges sharing a site.
pub fn is_proper_edge_coloring(lat: &Lattice, classes: &[Vec<(usize, usize)>]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for class in classes {
        let mut used = vec![false; lat.sites];
        for &(a, b) in class {
            let e = (a.min(b), a.max(b));
            if !lat.has_edge(a, b) || !seen.insert(e) || used[a] || used[b] {
                return false;
            }
            used[a] = true;
            used[b] = true;
        }
    }
    seen.len() == lat.edges.len()
}
