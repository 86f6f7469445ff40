//! Two-parameter generating trees.
//!
//! A [`SuccessionRule`] is plain data: a root label and the box of child
//! labels `x_min <= x <= a + x_slack`, `x + y_gap <= y <= b + y_slack`.
//! Level sizes are computed by pushing a multiplicity per label down the
//! tree, never by materialising nodes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub a: i64,
    pub b: i64,
}

impl Label {
    pub const fn new(a: i64, b: i64) -> Self {
        Label { a, b }
    }

    pub fn shifted(self, da: i64, db: i64) -> Self {
        Label::new(self.a + da, self.b + db)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Anything that assigns child labels to a label.
pub trait GrowthRule {
    fn root(&self) -> Label;
    fn children(&self, label: Label) -> Vec<Label>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessionRule {
    pub name: &'static str,
    pub root: Label,
    pub x_min: i64,
    pub x_slack: i64,
    pub y_gap: i64,
    pub y_slack: i64,
}

/// Rectangular tableaux `<n,n,n>`.
pub const RECT_SYT: SuccessionRule = SuccessionRule {
    name: "rect-syt",
    root: Label::new(2, 3),
    x_min: 2,
    x_slack: 1,
    y_gap: 1,
    y_slack: 2,
};

/// Even-length up-down permutations avoiding 1234.
pub const ALT_EVEN_1234: SuccessionRule = SuccessionRule {
    name: "alt-even-1234",
    ..RECT_SYT
};

/// Even-length up-down permutations avoiding 2143.
pub const ALT_EVEN_2143: SuccessionRule = SuccessionRule {
    name: "alt-even-2143",
    root: Label::new(1, 3),
    x_min: 1,
    x_slack: 1,
    y_gap: 2,
    y_slack: 2,
};

/// Odd-length down-up permutations avoiding 2143.
pub const ALT_ODD_2143: SuccessionRule = SuccessionRule {
    name: "alt-odd-2143",
    root: Label::new(0, 2),
    ..ALT_EVEN_2143
};

/// Shifted tableaux `<n+2,n+1,n>`: root `<2,1>`, rectangular rule below.
pub const SHIFTED_SYT: SuccessionRule = SuccessionRule {
    name: "shifted-syt",
    root: Label::new(1, 2),
    ..RECT_SYT
};

pub const PRESETS: [SuccessionRule; 5] =
    [RECT_SYT, ALT_EVEN_1234, ALT_EVEN_2143, ALT_ODD_2143, SHIFTED_SYT];

impl SuccessionRule {
    pub fn by_name(name: &str) -> Option<SuccessionRule> {
        PRESETS.iter().find(|r| r.name == name).copied()
    }

    pub fn admits(&self, parent: Label, child: Label) -> bool {
        let (x, y) = (child.a, child.b);
        self.x_min <= x
            && x <= parent.a + self.x_slack
            && x + self.y_gap <= y
            && y <= parent.b + self.y_slack
    }
}

impl GrowthRule for SuccessionRule {
    fn root(&self) -> Label {
        self.root
    }

    fn children(&self, label: Label) -> Vec<Label> {
        let mut out = Vec::new();
        for x in self.x_min..=label.a + self.x_slack {
            for y in x + self.y_gap..=label.b + self.y_slack {
                out.push(Label::new(x, y));
            }
        }
        out
    }
}

pub type LabelDistribution<C> = BTreeMap<Label, C>;

/// Exact multiset of labels at `depth` (root at depth 0).
///
/// A child `(x, y)` receives the total weight of all parents with
/// `a >= x - x_slack` and `b >= y - y_slack`, so each level is one pass of
/// two-dimensional suffix sums.
pub fn label_distribution<C: Count>(rule: &SuccessionRule, depth: usize) -> LabelDistribution<C> {
    let mut dist = LabelDistribution::new();
    dist.insert(rule.root, C::one());
    for _ in 0..depth {
        dist = next_level(rule, &dist);
    }
    dist
}

fn next_level<C: Count>(rule: &SuccessionRule, dist: &LabelDistribution<C>) -> LabelDistribution<C> {
    let mut out = LabelDistribution::new();
    let Some(a_lo) = dist.keys().map(|l| l.a).min() else {
        return out;
    };
    let a_hi = dist.keys().map(|l| l.a).max().unwrap();
    let b_lo = dist.keys().map(|l| l.b).min().unwrap();
    let b_hi = dist.keys().map(|l| l.b).max().unwrap();
    let width = (b_hi - b_lo + 1) as usize;
    let height = (a_hi - a_lo + 1) as usize;
    let idx = |a: i64, b: i64| (a - a_lo) as usize * width + (b - b_lo) as usize;

    // suffix[a][b] = sum of weights with a' >= a and b' >= b
    let mut suffix = vec![C::zero(); height * width];
    for (l, c) in dist {
        suffix[idx(l.a, l.b)] += c;
    }
    for a in a_lo..=a_hi {
        for b in (b_lo..b_hi).rev() {
            let next = suffix[idx(a, b + 1)].clone();
            suffix[idx(a, b)] += &next;
        }
    }
    for a in (a_lo..a_hi).rev() {
        for b in b_lo..=b_hi {
            let next = suffix[idx(a + 1, b)].clone();
            suffix[idx(a, b)] += &next;
        }
    }

    let x_max = a_hi + rule.x_slack;
    let y_max = b_hi + rule.y_slack;
    for x in rule.x_min..=x_max {
        let a_need = (x - rule.x_slack).max(a_lo);
        for y in x + rule.y_gap..=y_max {
            let b_need = (y - rule.y_slack).max(b_lo);
            let w = &suffix[idx(a_need, b_need)];
            if !w.is_zero() {
                out.insert(Label::new(x, y), w.clone());
            }
        }
    }
    out
}

/// Label multiset at `depth` by expanding every label's children one by one.
pub fn expanded_label_distribution<C: Count, R: GrowthRule>(
    rule: &R,
    depth: usize,
) -> LabelDistribution<C> {
    let mut dist = LabelDistribution::new();
    dist.insert(rule.root(), C::one());
    for _ in 0..depth {
        let mut next = LabelDistribution::new();
        for (label, mult) in &dist {
            for child in rule.children(*label) {
                *next.entry(child).or_insert_with(C::zero) += mult;
            }
        }
        dist = next;
    }
    dist
}

/// Number of nodes at `depth`.
pub fn level_count<C: Count>(rule: &SuccessionRule, depth: usize) -> C {
    let mut total = C::zero();
    for c in label_distribution::<C>(rule, depth).values() {
        total += c;
    }
    total
}

/// Level sizes for every depth `0..=max_depth` in one pass.
pub fn level_counts<C: Count>(rule: &SuccessionRule, max_depth: usize) -> Vec<C> {
    let mut dist = LabelDistribution::new();
    dist.insert(rule.root, C::one());
    let mut out = Vec::with_capacity(max_depth + 1);
    for d in 0..=max_depth {
        let mut total = C::zero();
        for c in dist.values() {
            total += c;
        }
        out.push(total);
        if d < max_depth {
            dist = next_level(rule, &dist);
        }
    }
    out
}

/// True iff at every depth up to `depth`, shifting each label of `a` by
/// `(da, db)` gives exactly the label multiset of `b`.
pub fn shifted_isomorphic(
    a: &SuccessionRule,
    b: &SuccessionRule,
    da: i64,
    db: i64,
    depth: usize,
) -> bool {
    let mut da_dist = LabelDistribution::<num_bigint::BigUint>::new();
    da_dist.insert(a.root, 1u32.into());
    let mut db_dist = LabelDistribution::<num_bigint::BigUint>::new();
    db_dist.insert(b.root, 1u32.into());
    for d in 0..=depth {
        let shifted: LabelDistribution<_> = da_dist
            .iter()
            .map(|(l, c)| (l.shifted(da, db), c.clone()))
            .collect();
        if shifted != db_dist {
            return false;
        }
        if d < depth {
            da_dist = next_level(a, &da_dist);
            db_dist = next_level(b, &db_dist);
        }
    }
    true
}
