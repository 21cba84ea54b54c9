//! Executable models of the labeled infinite binary trees behind the
//! combinatorial interpretations, their pruning operations, and the
//! difference-string identity.
//!
//! Both models share one skeleton: an ascending spine of empty `s`-nodes,
//! where the m-th s-node roots a complete binary tree whose left child is
//! the (m-1)-st s-node and whose right child carries a fresh complete
//! subtree one level deeper than the previous one. Labels `1..n` fill the
//! label-bearing nodes in preorder.
//!
//! Model T: regular nodes hold one label, leaves hold three in two cells
//! (one plus two). The Conolly sequence appears as the number of nonempty
//! leaf cells. Model U(alpha, beta): regular nodes hold `beta` labels,
//! leaves hold `alpha + beta`, and the `(alpha,beta)`-Conolly sequence
//! appears as the number of nonempty leaves.
//!
//! Only the prefix of the infinite tree needed to hold the labels (plus
//! the next free node) is ever materialized.

use crate::engine;
use crate::notation::RecursionSpec;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    SNode,
    Regular,
    Leaf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TreeModel {
    T,
    U { alpha: i64, beta: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("invalid parameters alpha={alpha}, beta={beta}: need beta >= 0, alpha+beta > 0, alpha even")]
    InvalidParameters { alpha: i64, beta: i64 },
    #[error("tree with {n} labels is too small to prune (need at least {min})")]
    TooFewLabels { n: usize, min: usize },
    #[error("pruning invariant violated: a node ran out of labels")]
    PruneUnderflow,
}

/// Where the last label of a model-T prefix sits; drives the correction
/// step of the pruning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelPosition {
    OnRegular,
    LeafFirst,
    LeafSecond,
    LeafThird,
}

#[derive(Clone, Debug)]
struct Node {
    kind: NodeKind,
    /// Model T leaves use both cells (capacity one and two); every other
    /// node keeps its labels in the first cell.
    cells: [Vec<i64>; 2],
    parent: Option<usize>,
    children: Vec<usize>,
    is_left: bool,
    removed: bool,
}

impl Node {
    fn label_count(&self) -> usize {
        self.cells[0].len() + self.cells[1].len()
    }
}

/// The finite labeled prefix of an infinite tree, for either model.
#[derive(Clone, Debug)]
pub struct TreePrefix {
    model: TreeModel,
    nodes: Vec<Node>,
    /// Label-bearing nodes (regular and leaf) in preorder.
    order: Vec<usize>,
    first_snode: usize,
    top_snode: usize,
    next_block: usize,
    labels: usize,
    frontier: usize,
    last_slot: Option<(usize, usize, usize)>,
    nonempty_cells: usize,
    nonempty_leaves: usize,
    correction_spilled: bool,
}

impl TreePrefix {
    /// T with labels `1..=n`.
    pub fn build_t(n: usize) -> TreePrefix {
        let mut tree = TreePrefix::empty(TreeModel::T);
        for _ in 0..n {
            tree.push_label();
        }
        tree.ensure_frontier_node();
        tree
    }

    /// U(alpha, beta) with labels `1..=n`.
    pub fn build_u(alpha: i64, beta: i64, n: usize) -> Result<TreePrefix, TreeError> {
        if beta < 0 || alpha + beta <= 0 || alpha % 2 != 0 {
            return Err(TreeError::InvalidParameters { alpha, beta });
        }
        let mut tree = TreePrefix::empty(TreeModel::U { alpha, beta });
        for _ in 0..n {
            tree.push_label();
        }
        tree.ensure_frontier_node();
        Ok(tree)
    }

    fn empty(model: TreeModel) -> TreePrefix {
        let snode = Node {
            kind: NodeKind::SNode,
            cells: [Vec::new(), Vec::new()],
            parent: None,
            children: Vec::new(),
            is_left: false,
            removed: false,
        };
        let mut tree = TreePrefix {
            model,
            nodes: vec![snode],
            order: Vec::new(),
            first_snode: 0,
            top_snode: 0,
            next_block: 2,
            labels: 0,
            frontier: 0,
            last_slot: None,
            nonempty_cells: 0,
            nonempty_leaves: 0,
            correction_spilled: false,
        };
        let left = tree.add_node(NodeKind::Leaf, Some(0), true);
        let right = tree.add_node(NodeKind::Leaf, Some(0), false);
        tree.order.push(left);
        tree.order.push(right);
        tree
    }

    fn add_node(&mut self, kind: NodeKind, parent: Option<usize>, is_left: bool) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(Node {
            kind,
            cells: [Vec::new(), Vec::new()],
            parent,
            children: Vec::new(),
            is_left,
            removed: false,
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(idx);
        }
        idx
    }

    fn capacities(&self, kind: NodeKind) -> [usize; 2] {
        match (self.model, kind) {
            (_, NodeKind::SNode) => [0, 0],
            (TreeModel::T, NodeKind::Regular) => [1, 0],
            (TreeModel::T, NodeKind::Leaf) => [1, 2],
            (TreeModel::U { beta, .. }, NodeKind::Regular) => [beta as usize, 0],
            (TreeModel::U { alpha, beta }, NodeKind::Leaf) => [(alpha + beta) as usize, 0],
        }
    }

    /// Materialize the next spine level: a new s-node above the current
    /// top plus its right subtree, one level deeper than the last.
    fn grow(&mut self) {
        let levels = self.next_block;
        self.next_block += 1;
        let snode = self.add_node(NodeKind::SNode, None, false);
        let old_top = self.top_snode;
        self.nodes[old_top].parent = Some(snode);
        self.nodes[old_top].is_left = true;
        self.nodes[snode].children.push(old_top);
        self.top_snode = snode;
        self.grow_block(snode, false, 1, levels);
    }

    fn grow_block(&mut self, parent: usize, is_left: bool, depth: usize, levels: usize) {
        let kind = if depth == levels { NodeKind::Leaf } else { NodeKind::Regular };
        let idx = self.add_node(kind, Some(parent), is_left);
        self.order.push(idx);
        if depth < levels {
            self.grow_block(idx, true, depth + 1, levels);
            self.grow_block(idx, false, depth + 1, levels);
        }
    }

    /// Advance the frontier to a node with free capacity, materializing
    /// more of the tree when the prefix is exhausted.
    fn ensure_frontier_node(&mut self) {
        loop {
            if self.frontier >= self.order.len() {
                self.grow();
            }
            let idx = self.order[self.frontier];
            let caps = self.capacities(self.nodes[idx].kind);
            let node = &self.nodes[idx];
            if node.cells[0].len() < caps[0] || node.cells[1].len() < caps[1] {
                return;
            }
            self.frontier += 1;
        }
    }

    fn push_label(&mut self) {
        self.ensure_frontier_node();
        let value = (self.labels + 1) as i64;
        let idx = self.order[self.frontier];
        let caps = self.capacities(self.nodes[idx].kind);
        let cell = if self.nodes[idx].cells[0].len() < caps[0] { 0 } else { 1 };
        if self.nodes[idx].kind == NodeKind::Leaf {
            if self.nodes[idx].cells[cell].is_empty() {
                self.nonempty_cells += 1;
            }
            if self.nodes[idx].label_count() == 0 {
                self.nonempty_leaves += 1;
            }
        }
        let slot = self.nodes[idx].cells[cell].len();
        self.nodes[idx].cells[cell].push(value);
        self.last_slot = Some((idx, cell, slot));
        self.labels += 1;
    }

    pub fn model(&self) -> TreeModel {
        self.model
    }

    /// Number of labels currently held.
    pub fn label_count(&self) -> usize {
        self.labels
    }

    /// `L(n)`: nonempty cells across the leaves (the model-T count).
    pub fn cell_count(&self) -> usize {
        self.nonempty_cells
    }

    /// `M(n)`: nonempty leaves (the model-U count).
    pub fn leaf_count(&self) -> usize {
        self.nonempty_leaves
    }

    fn leaf_cells(&self, want_left: bool) -> usize {
        self.order
            .iter()
            .map(|&i| &self.nodes[i])
            .filter(|n| !n.removed && n.kind == NodeKind::Leaf && n.is_left == want_left)
            .map(|n| (!n.cells[0].is_empty()) as usize + (!n.cells[1].is_empty()) as usize)
            .sum()
    }

    pub fn left_leaf_cell_count(&self) -> usize {
        self.leaf_cells(true)
    }

    pub fn right_leaf_cell_count(&self) -> usize {
        self.leaf_cells(false)
    }

    fn leaves(&self, want_left: bool) -> usize {
        self.order
            .iter()
            .map(|&i| &self.nodes[i])
            .filter(|n| {
                !n.removed && n.kind == NodeKind::Leaf && n.is_left == want_left && n.label_count() > 0
            })
            .count()
    }

    pub fn left_leaf_count(&self) -> usize {
        self.leaves(true)
    }

    pub fn right_leaf_count(&self) -> usize {
        self.leaves(false)
    }

    /// Where the highest label sits (model T), for the pruning correction.
    pub fn last_label_position(&self) -> Option<LabelPosition> {
        let (idx, cell, slot) = self.last_slot?;
        Some(match (self.nodes[idx].kind, cell, slot) {
            (NodeKind::Leaf, 0, _) => LabelPosition::LeafFirst,
            (NodeKind::Leaf, 1, 0) => LabelPosition::LeafSecond,
            (NodeKind::Leaf, 1, _) => LabelPosition::LeafThird,
            _ => LabelPosition::OnRegular,
        })
    }

    /// Preorder skeleton of the label-bearing nodes: kind plus per-cell
    /// label counts, with the empty tail trimmed. Two prefixes of the same
    /// infinite tree are structurally equal exactly when these agree, so
    /// this is what pruning is judged against, label values ignored.
    pub fn structural_signature(&self) -> Vec<(NodeKind, usize, usize)> {
        let mut sig: Vec<(NodeKind, usize, usize)> = self
            .order
            .iter()
            .map(|&i| &self.nodes[i])
            .filter(|n| !n.removed)
            .map(|n| (n.kind, n.cells[0].len(), n.cells[1].len()))
            .collect();
        while sig.last().is_some_and(|&(_, a, b)| a == 0 && b == 0) {
            sig.pop();
        }
        sig
    }

    /// Whether the pruning correction ever had to start a fresh node.
    pub fn correction_spilled(&self) -> bool {
        self.correction_spilled
    }

    /// The pruning transformation for this prefix's model. The result
    /// keeps the original label values ("before the final relabeling");
    /// only node kinds and per-node counts are meaningful afterwards.
    pub fn prune(&self) -> Result<TreePrefix, TreeError> {
        match self.model {
            TreeModel::T => self.prune_t(),
            TreeModel::U { alpha, beta } => self.prune_u(alpha, beta),
        }
    }

    /// Prune T(n) to T(n - L(n-2)): label the first s-node, delete one
    /// label per nonempty leaf cell, give the penultimate level cells,
    /// lift surviving leaf labels, drop the leaves, then correct by one
    /// label according to where label n sat.
    fn prune_t(&self) -> Result<TreePrefix, TreeError> {
        if self.labels < 6 {
            return Err(TreeError::TooFewLabels { n: self.labels, min: 6 });
        }
        let mut tree = self.clone();
        let last_position = tree.last_label_position().expect("labels exist");

        // Initial step.
        tree.nodes[tree.first_snode].cells[0].push(0);

        // Deletion step: the oldest label of every nonempty leaf cell.
        for pos in 0..tree.order.len() {
            let idx = tree.order[pos];
            if tree.nodes[idx].kind != NodeKind::Leaf {
                continue;
            }
            for cell in 0..2 {
                if !tree.nodes[idx].cells[cell].is_empty() {
                    tree.nodes[idx].cells[cell].remove(0);
                }
            }
        }

        // Cell creation and lifting: survivors sit in the second leaf
        // cell; they move to the second cell of the parent, which becomes
        // a leaf of the pruned tree. Then the old leaves disappear.
        tree.lift_leaves_into_parents(1);

        let new_order = tree.rebuild_order();

        match last_position {
            LabelPosition::OnRegular => {
                tree.remove_last_label(&new_order)?;
            }
            LabelPosition::LeafSecond => {
                tree.insert_label_at_first_gap(&new_order);
            }
            LabelPosition::LeafFirst | LabelPosition::LeafThird => {}
        }

        Ok(tree.finish_prune(new_order))
    }

    /// Prune U(n) to U(n - sum_j M(n - 2j + 1)): add beta labels to the
    /// first s-node, delete min(floor(d/2), p) labels per leaf (d counts
    /// labels on or after the leaf), cascading any deficit to the parent,
    /// lift the leftovers, drop the leaves, and delete the final beta
    /// labels.
    fn prune_u(&self, alpha: i64, beta: i64) -> Result<TreePrefix, TreeError> {
        let p = alpha / 2 + beta;
        let threshold = (4 * alpha + 5 * beta) as usize;
        if self.labels <= threshold {
            return Err(TreeError::TooFewLabels { n: self.labels, min: threshold + 1 });
        }
        let mut tree = self.clone();
        let n = tree.labels as i64;

        // Initial step.
        for _ in 0..beta {
            tree.nodes[tree.first_snode].cells[0].push(0);
        }

        // Deletion step, with quotas snapshotted from the original labels.
        let mut quotas: Vec<(usize, i64)> = Vec::new();
        for &idx in &tree.order {
            let node = &tree.nodes[idx];
            if node.kind != NodeKind::Leaf || node.cells[0].is_empty() {
                continue;
            }
            let first = node.cells[0][0];
            let on_or_after = n - first + 1;
            quotas.push((idx, (on_or_after / 2).min(p)));
        }
        for (idx, quota) in quotas {
            let available = tree.nodes[idx].cells[0].len() as i64;
            for _ in 0..quota.min(available) {
                tree.nodes[idx].cells[0].pop();
            }
            let deficit = quota - available;
            if deficit > 0 {
                let parent = tree.nodes[idx].parent.expect("leaves have parents");
                for _ in 0..deficit {
                    if tree.nodes[parent].cells[0].pop().is_none() {
                        return Err(TreeError::PruneUnderflow);
                    }
                }
            }
        }

        tree.lift_leaves_into_parents(0);

        let new_order = tree.rebuild_order();

        // Correction step: the last beta labels, by preorder.
        for _ in 0..beta {
            tree.remove_last_label(&new_order)?;
        }

        Ok(tree.finish_prune(new_order))
    }

    /// Move surviving leaf labels into `target_cell` of their parents,
    /// delete the leaves, and turn the parents (including the first
    /// s-node) into leaves of the pruned tree.
    fn lift_leaves_into_parents(&mut self, target_cell: usize) {
        for pos in 0..self.order.len() {
            let idx = self.order[pos];
            if self.nodes[idx].kind != NodeKind::Leaf {
                continue;
            }
            let parent = self.nodes[idx].parent.expect("leaves have parents");
            let mut survivors: Vec<i64> = Vec::new();
            for cell in 0..2 {
                survivors.append(&mut self.nodes[idx].cells[cell]);
            }
            self.nodes[parent].cells[target_cell].extend(survivors);
            self.nodes[parent].kind = NodeKind::Leaf;
            self.nodes[idx].removed = true;
        }
    }

    /// Label-bearing preorder of the pruned tree: the old first s-node,
    /// now a leaf, comes first; the surviving interior preserves its
    /// relative order.
    fn rebuild_order(&self) -> Vec<usize> {
        let mut new_order = Vec::with_capacity(self.order.len() / 2 + 1);
        new_order.push(self.first_snode);
        new_order.extend(self.order.iter().copied().filter(|&i| !self.nodes[i].removed));
        new_order
    }

    fn remove_last_label(&mut self, order: &[usize]) -> Result<(), TreeError> {
        for &idx in order.iter().rev() {
            for cell in [1, 0] {
                if !self.nodes[idx].cells[cell].is_empty() {
                    self.nodes[idx].cells[cell].pop();
                    return Ok(());
                }
            }
        }
        Err(TreeError::PruneUnderflow)
    }

    /// Add one label in the first unfilled cell in preorder. In every case
    /// that actually arises, that cell belongs to the node holding the
    /// last label; `correction_spilled` records any other outcome.
    fn insert_label_at_first_gap(&mut self, order: &[usize]) {
        for &idx in order {
            let caps = self.capacities(self.nodes[idx].kind);
            for (cell, &cap) in caps.iter().enumerate() {
                if self.nodes[idx].cells[cell].len() < cap {
                    if self.nodes[idx].label_count() == 0 {
                        self.correction_spilled = true;
                    }
                    self.nodes[idx].cells[cell].push(0);
                    return;
                }
            }
        }
        // No gap in the materialized prefix would mean the tree is full,
        // which a labeled prefix plus one spare node rules out.
        self.correction_spilled = true;
    }

    fn finish_prune(mut self, new_order: Vec<usize>) -> TreePrefix {
        // The old first s-node became the leftmost leaf; its parent is the
        // first s-node of the pruned tree.
        let new_first = self.nodes[self.first_snode].parent.expect("spine is materialized");
        self.order = new_order;
        self.first_snode = new_first;
        self.frontier = self.order.len();
        self.last_slot = None;
        self.labels = self
            .order
            .iter()
            .map(|&i| self.nodes[i].label_count())
            .sum();
        self.nonempty_cells = self
            .order
            .iter()
            .map(|&i| &self.nodes[i])
            .filter(|n| !n.removed && n.kind == NodeKind::Leaf)
            .map(|n| (!n.cells[0].is_empty()) as usize + (!n.cells[1].is_empty()) as usize)
            .sum();
        self.nonempty_leaves = self
            .order
            .iter()
            .map(|&i| &self.nodes[i])
            .filter(|n| !n.removed && n.kind == NodeKind::Leaf && n.label_count() > 0)
            .count();
        self
    }

    /// Graphviz rendering of the labeled prefix: labeled nodes, their
    /// ancestors, and the immediate children of anything shown.
    pub fn to_dot(&self) -> String {
        let mut include = vec![false; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.removed || node.label_count() == 0 {
                continue;
            }
            let mut cursor = Some(i);
            while let Some(c) = cursor {
                if include[c] {
                    break;
                }
                include[c] = true;
                cursor = self.nodes[c].parent;
            }
        }
        let shown: Vec<usize> = (0..self.nodes.len()).filter(|&i| include[i]).collect();
        for i in shown {
            for &child in &self.nodes[i].children {
                if !self.nodes[child].removed {
                    include[child] = true;
                }
            }
        }
        let mut out = String::from("digraph tree {\n  node [fontname=\"monospace\"];\n");
        let cell_text = |cell: &[i64]| {
            if cell.is_empty() {
                "∅".to_string()
            } else {
                cell.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        for (i, node) in self.nodes.iter().enumerate() {
            if !include[i] || node.removed {
                continue;
            }
            let line = match node.kind {
                NodeKind::SNode => format!("  n{i} [shape=square, label=\"s\"];\n"),
                NodeKind::Regular => format!(
                    "  n{i} [shape=circle, label=\"{}\"];\n",
                    cell_text(&node.cells[0])
                ),
                NodeKind::Leaf => match self.model {
                    TreeModel::T => format!(
                        "  n{i} [shape=record, label=\"{}|{}\"];\n",
                        cell_text(&node.cells[0]),
                        cell_text(&node.cells[1])
                    ),
                    TreeModel::U { .. } => format!(
                        "  n{i} [shape=box, label=\"{}\"];\n",
                        cell_text(&node.cells[0])
                    ),
                },
            };
            out.push_str(&line);
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if !include[i] || node.removed {
                continue;
            }
            for &child in &node.children {
                if include[child] && !self.nodes[child].removed {
                    out.push_str(&format!("  n{i} -> n{child};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `L(n)` for `n = 1..=max`, built incrementally.
pub fn cell_count_sequence(max: usize) -> Vec<i64> {
    let mut tree = TreePrefix::empty(TreeModel::T);
    let mut out = Vec::with_capacity(max);
    for _ in 0..max {
        tree.push_label();
        out.push(tree.cell_count() as i64);
    }
    out
}

/// `M(n)` for `n = 1..=max` under U(alpha, beta).
pub fn leaf_count_sequence(alpha: i64, beta: i64, max: usize) -> Result<Vec<i64>, TreeError> {
    if beta < 0 || alpha + beta <= 0 || alpha % 2 != 0 {
        return Err(TreeError::InvalidParameters { alpha, beta });
    }
    let mut tree = TreePrefix::empty(TreeModel::U { alpha, beta });
    let mut out = Vec::with_capacity(max);
    for _ in 0..max {
        tree.push_label();
        out.push(tree.leaf_count() as i64);
    }
    Ok(out)
}

/// `D_k`: `D_0 = 1`, `D_{k+1} = 0 D_k D_k`.
pub fn diff_string_d(k: usize) -> String {
    let mut d = String::from("1");
    for _ in 0..k {
        d = format!("0{d}{d}");
    }
    d
}

/// `F_k`: `F_1 = 110110`, `F_2 = 0 F_1`, `F_{k+1} = 0 F_k F_k` for `k >= 2`.
pub fn diff_string_f(k: usize) -> String {
    assert!(k >= 1);
    if k == 1 {
        return "110110".to_string();
    }
    let mut f = "0110110".to_string();
    for _ in 2..k {
        f = format!("0{f}{f}");
    }
    f
}

/// First `bits` characters of `D_0 D_0 D_1 D_2 ...`.
pub fn d_stream(bits: usize) -> String {
    let mut out = String::with_capacity(bits + 64);
    out.push_str(&diff_string_d(0));
    let mut k = 0;
    while out.len() < bits {
        out.push_str(&diff_string_d(k));
        k += 1;
    }
    out.truncate(bits);
    out
}

/// First `bits` characters of `F_1 F_2 F_3 ...`.
pub fn f_stream(bits: usize) -> String {
    let mut out = String::with_capacity(bits + 64);
    let mut k = 1;
    while out.len() < bits {
        out.push_str(&diff_string_f(k));
        k += 1;
    }
    out.truncate(bits);
    out
}

/// Check that the two concatenated difference strings agree with each
/// other and with the first differences of the Conolly sequence (taking
/// C(0) = 0) out to `bits` positions.
pub fn verify_diff_identity(bits: usize) -> bool {
    let d = d_stream(bits);
    let f = f_stream(bits);
    if d != f {
        return false;
    }
    let conolly = engine::evaluate(
        &RecursionSpec::parse("<0;1:1;2>[1,2]").expect("well-formed literal"),
        bits,
    )
    .expect("Conolly evaluation is alive");
    if !conolly.is_alive() {
        return false;
    }
    let mut previous = 0;
    for (i, &value) in conolly.values.iter().enumerate() {
        let bit = if value - previous == 1 { b'1' } else { b'0' };
        if d.as_bytes()[i] != bit {
            return false;
        }
        previous = value;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONOLLY_20: [i64; 20] =
        [1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9, 10, 10, 11, 12];

    #[test]
    fn cell_counts_match_table_two() {
        assert_eq!(cell_count_sequence(20), CONOLLY_20);
        assert_eq!(TreePrefix::build_t(0).cell_count(), 0);
        assert_eq!(TreePrefix::build_t(20).cell_count(), 12);
    }

    #[test]
    fn cell_count_case_analysis() {
        // L(n) - L(n-2) depends only on where label n sits.
        let l = cell_count_sequence(2000);
        for n in 3..=2000usize {
            let tree = TreePrefix::build_t(n);
            let drop = l[n - 1]
                - match tree.last_label_position().unwrap() {
                    LabelPosition::OnRegular => 0,
                    LabelPosition::LeafFirst => 1,
                    LabelPosition::LeafSecond => 2,
                    LabelPosition::LeafThird => 1,
                };
            assert_eq!(l[n - 3], drop, "n = {n}");
        }
    }

    #[test]
    fn prune_t_of_twenty_is_t_ten() {
        let pruned = TreePrefix::build_t(20).prune().unwrap();
        assert_eq!(pruned.label_count(), 10);
        assert!(!pruned.correction_spilled());
        assert_eq!(pruned.structural_signature(), TreePrefix::build_t(10).structural_signature());
    }

    #[test]
    fn prune_t_of_six_is_t_three() {
        let pruned = TreePrefix::build_t(6).prune().unwrap();
        assert_eq!(pruned.label_count(), 3);
        assert_eq!(pruned.structural_signature(), TreePrefix::build_t(3).structural_signature());
    }

    #[test]
    fn prune_t_contract_holds_on_a_range() {
        let l = cell_count_sequence(300);
        for n in 6..=300usize {
            let pruned = TreePrefix::build_t(n).prune().unwrap();
            let target = n - l[n - 3] as usize;
            assert_eq!(pruned.label_count(), target, "n = {n}");
            assert!(!pruned.correction_spilled(), "n = {n}");
            assert_eq!(
                pruned.structural_signature(),
                TreePrefix::build_t(target).structural_signature(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn prune_t_rejects_small_trees() {
        assert!(matches!(
            TreePrefix::build_t(5).prune(),
            Err(TreeError::TooFewLabels { .. })
        ));
    }

    #[test]
    fn left_and_right_cells_decompose_l() {
        let l = cell_count_sequence(2000);
        for n in 6..=2000usize {
            let tree = TreePrefix::build_t(n);
            let left = tree.left_leaf_cell_count() as i64;
            let right = tree.right_leaf_cell_count() as i64;
            assert_eq!(left, l[(n as i64 - l[n - 3]) as usize - 1], "left at n = {n}");
            assert_eq!(right, l[(n as i64 - 3 - l[n - 6]) as usize - 1], "right at n = {n}");
            assert_eq!(left + right, l[n - 1]);
        }
    }

    #[test]
    fn u_leaf_counts() {
        let tree = TreePrefix::build_u(2, 1, 17).unwrap();
        assert_eq!(tree.leaf_count(), 5);
        assert_eq!(TreePrefix::build_u(0, 1, 0).unwrap().leaf_count(), 0);
        assert!(TreePrefix::build_u(1, 1, 5).is_err());
        assert!(TreePrefix::build_u(2, -1, 5).is_err());
        assert!(TreePrefix::build_u(-2, 2, 5).is_err());
    }

    #[test]
    fn u_with_zero_one_counts_conolly() {
        let m = leaf_count_sequence(0, 1, 2000).unwrap();
        let conolly = engine::evaluate(
            &RecursionSpec::parse("<0;1:1;2>[1,2]").unwrap(),
            2000,
        )
        .unwrap();
        assert_eq!(m, conolly.values);
    }

    #[test]
    fn prune_u_figures() {
        let pruned = TreePrefix::build_u(2, 1, 17).unwrap().prune().unwrap();
        assert_eq!(pruned.label_count(), 8);
        assert_eq!(
            pruned.structural_signature(),
            TreePrefix::build_u(2, 1, 8).unwrap().structural_signature()
        );

        let pruned = TreePrefix::build_u(-2, 3, 12).unwrap().prune().unwrap();
        assert_eq!(pruned.label_count(), 4);
        assert_eq!(
            pruned.structural_signature(),
            TreePrefix::build_u(-2, 3, 4).unwrap().structural_signature()
        );
    }

    #[test]
    fn prune_u_with_order_one_model_drops_previous_count() {
        let m = leaf_count_sequence(0, 1, 400).unwrap();
        for n in 6..=400usize {
            let pruned = TreePrefix::build_u(0, 1, n).unwrap().prune().unwrap();
            assert_eq!(pruned.label_count() as i64, n as i64 - m[n - 2], "n = {n}");
        }
    }

    #[test]
    fn prune_u_respects_threshold() {
        // 4 alpha + 5 beta = 13 for (2,1); 13 labels must be rejected.
        assert!(TreePrefix::build_u(2, 1, 13).unwrap().prune().is_err());
        assert!(TreePrefix::build_u(2, 1, 14).unwrap().prune().is_ok());
    }

    #[test]
    fn left_and_right_leaves_decompose_m() {
        for (alpha, beta) in [(0i64, 1i64), (2, 1), (0, 2), (-2, 3), (4, 0)] {
            let p = (alpha / 2 + beta) as usize;
            let gamma = alpha + beta;
            let m = leaf_count_sequence(alpha, beta, 400).unwrap();
            let value = |k: i64| if k >= 1 { m[k as usize - 1] } else { 0 };
            for n in (4 * alpha + 5 * beta + 1).max(gamma + 2 * p as i64 + 1)..=400 {
                let tree = TreePrefix::build_u(alpha, beta, n as usize).unwrap();
                let shrink: i64 = (1..=p as i64).map(|j| value(n - 2 * j + 1)).sum();
                let shrink_shifted: i64 =
                    (1..=p as i64).map(|j| value(n - gamma - 2 * j + 1)).sum();
                assert_eq!(
                    tree.left_leaf_count() as i64,
                    value(n - shrink),
                    "left at n = {n} for ({alpha},{beta})"
                );
                assert_eq!(
                    tree.right_leaf_count() as i64,
                    value(n - gamma - shrink_shifted),
                    "right at n = {n} for ({alpha},{beta})"
                );
            }
        }
    }

    #[test]
    fn diff_string_bases() {
        assert_eq!(diff_string_d(0), "1");
        assert_eq!(diff_string_d(1), "011");
        assert_eq!(diff_string_d(2), "0011011");
        assert_eq!(diff_string_f(1), "110110");
        assert_eq!(diff_string_f(2), "0110110");
    }

    #[test]
    fn f_is_d_conjugated_by_zero() {
        for k in 2..=12 {
            let lhs = format!("0{}", diff_string_f(k));
            let rhs = format!("{}0", diff_string_d(k));
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn difference_identity_holds() {
        assert!(verify_diff_identity(1 << 10));
    }

    #[test]
    fn dot_rendering_mentions_every_label() {
        let dot = TreePrefix::build_t(20).to_dot();
        assert!(dot.starts_with("digraph"));
        for v in [1, 7, 14, 20] {
            assert!(dot.contains(&v.to_string()), "missing {v}");
        }
        let dot = TreePrefix::build_u(2, 1, 17).unwrap().to_dot();
        assert!(dot.contains("17"));
    }
}
