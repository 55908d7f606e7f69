//! Shared graph routines over adjacency lists: an iterative Tarjan
//! strongly-connected-components pass used by several analyses.

/// Strongly connected components of a directed graph.
pub(crate) struct SccResult {
    /// Components in reverse topological order of discovery finish; Tarjan
    /// emits each component only after all components it reaches.
    pub components: Vec<Vec<usize>>,
    /// Component index per node, `None` for nodes not listed in `roots`
    /// and unreachable from them (never produced when all nodes are roots).
    pub component_of: Vec<Option<usize>>,
}

/// Runs Tarjan's algorithm iteratively (no recursion, safe for deep graphs)
/// over `adj`, starting DFS from each of `roots` in order.
pub(crate) fn tarjan_scc(adj: &[Vec<usize>], roots: impl IntoIterator<Item = usize>) -> SccResult {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut component_of = vec![None; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0usize;

    // Explicit DFS frames: (node, next child position in adj[node]).
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in roots {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut child)) = frames.last_mut() {
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component_of[w] = Some(components.len());
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    component.reverse();
                    components.push(component);
                }
            }
        }
    }

    SccResult {
        components,
        component_of,
    }
}
