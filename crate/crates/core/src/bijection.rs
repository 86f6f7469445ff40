//! Permutation labels, the child construction for 2143-avoiders, and the
//! recursive bijections with rectangular and shifted tableaux.
//!
//! Both sides are addressed by label paths: since every node has at most
//! one child per label, the sequence of labels from the root down is a
//! complete coordinate. A bijection is a path translation plus a replay.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::avoidance::{active_values, active_values_2143, ActiveSet};
use crate::error::{Error, Result};
use crate::gentree::{Label, SuccessionRule, ALT_EVEN_2143, ALT_ODD_2143};
use crate::perm::{AlternationConvention, Permutation};
use crate::tableaux::{self, Tableau};

/// Offset from permutation labels to tableau labels, for both parities.
pub const TABLEAU_SHIFT: (i64, i64) = (1, 0);

fn pattern_2143() -> Permutation {
    Permutation::from_vec_unchecked(vec![2, 1, 4, 3])
}

fn pattern_1234() -> Permutation {
    Permutation::from_vec_unchecked(vec![1, 2, 3, 4])
}

/// Which of the two 2143 trees a permutation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    /// Up-down permutations of length `2n`, root `12`.
    Even,
    /// Down-up permutations of length `2n + 1`, root `1`.
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn root(self) -> Permutation {
        match self {
            Parity::Even => Permutation::from_vec_unchecked(vec![1, 2]),
            Parity::Odd => Permutation::from_vec_unchecked(vec![1]),
        }
    }

    pub fn rule(self) -> SuccessionRule {
        match self {
            Parity::Even => ALT_EVEN_2143,
            Parity::Odd => ALT_ODD_2143,
        }
    }

    fn convention(self) -> AlternationConvention {
        match self {
            Parity::Even => AlternationConvention::UpDown,
            Parity::Odd => AlternationConvention::DownUp,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelPath(pub Vec<Label>);

impl LabelPath {
    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shifted(&self, da: i64, db: i64) -> LabelPath {
        LabelPath(self.0.iter().map(|l| l.shifted(da, db)).collect())
    }
}

impl fmt::Display for LabelPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Label::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Checks that `w` is a node of the 2143 tree of its parity.
fn check_tree_member(w: &Permutation) -> Result<Parity> {
    if w.is_empty() {
        return Err(Error::Precondition("the empty permutation has no label".into()));
    }
    let parity = Parity::of_len(w.len());
    if !w.is_alternating(parity.convention()) {
        let kind = match parity {
            Parity::Even => "up-down",
            Parity::Odd => "down-up",
        };
        return Err(Error::Precondition(format!("{w} is not {kind} alternating")));
    }
    if w.contains(&pattern_2143()) {
        return Err(Error::Precondition(format!("{w} contains 2143")));
    }
    Ok(parity)
}

/// `(a, b)` with `a` the next-to-last entry (0 for the root `1`) and `b`
/// the number of active values for 2143.
pub fn perm_label_2143(w: &Permutation) -> Result<Label> {
    check_tree_member(w)?;
    let a = if w.len() >= 2 { w.at(w.len() - 1) } else { 0 };
    let b = active_values_2143(w)?.len();
    Ok(Label::new(a as i64, b as i64))
}

/// `(a, b)` with `a` the least entry that ends an ascent pair `w_i < w_j`,
/// `i < j`, and `b` the number of active values for 1234.
pub fn perm_label_1234(w: &Permutation) -> Result<Label> {
    if w.is_empty() || w.len() % 2 != 0 || !w.is_alternating(AlternationConvention::UpDown) {
        return Err(Error::Precondition(format!("{w} is not an even-length up-down permutation")));
    }
    let b = active_values(w, &pattern_1234())?.len();
    let mut prefix_min = u32::MAX;
    let mut a = u32::MAX;
    for &v in w.values() {
        if v > prefix_min {
            a = a.min(v);
        }
        prefix_min = prefix_min.min(v);
    }
    Ok(Label::new(a as i64, b as i64))
}

/// The child of `u` with label `target = (x, y)`:
/// `(u <- x) <- (s_{b+2+x-y} + 1)` where `s` lists the active values of `u`.
pub fn child_perm_2143(u: &Permutation, target: Label) -> Result<Permutation> {
    let parity = check_tree_member(u)?;
    let label = perm_label_2143(u)?;
    if !parity.rule().admits(label, target) {
        return Err(Error::Domain(format!("{target} is not a child label of {label}")));
    }
    let active: ActiveSet = active_values_2143(u)?;
    let index = (label.b + 2 + target.a - target.b) as usize;
    let second = active.nth(index).expect("index lies in 1..=b") + 1;
    u.extend(target.a as u32)?.extend(second)
}

/// Labels of the non-root ancestors of `w` (and `w` itself), top down.
pub fn perm_to_labelpath(w: &Permutation) -> Result<LabelPath> {
    let parity = check_tree_member(w)?;
    let root_len = parity.root().len();
    let path = (root_len + 2..=w.len())
        .step_by(2)
        .map(|len| perm_label_2143(&w.prefix(len)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LabelPath(path))
}

pub fn labelpath_to_perm(path: &LabelPath, parity: Parity) -> Result<Permutation> {
    path.labels()
        .iter()
        .try_fold(parity.root(), |w, &target| child_perm_2143(&w, target))
}

/// `A_{2n}(2143) -> SYT(n,n,n)`.
pub fn perm_to_tableau(w: &Permutation) -> Result<Tableau> {
    if Parity::of_len(w.len()) != Parity::Even {
        return Err(Error::Precondition(format!("{w} has odd length")));
    }
    let path = perm_to_labelpath(w)?.shifted(TABLEAU_SHIFT.0, TABLEAU_SHIFT.1);
    path.labels()
        .iter()
        .try_fold(tableaux::rect_root(), |t, &target| tableaux::syt_child(&t, target))
}

fn tableau_path(t: &Tableau, label: fn(&Tableau) -> Result<Label>, root_size: usize) -> Result<LabelPath> {
    let mut path = Vec::new();
    let mut cur = t.clone();
    while cur.size() > root_size {
        path.push(label(&cur)?);
        cur = cur.drop_last_column();
    }
    path.reverse();
    Ok(LabelPath(path))
}

/// `SYT(n,n,n) -> A_{2n}(2143)`.
pub fn tableau_to_perm(t: &Tableau) -> Result<Permutation> {
    tableaux::syt_label(t)?;
    let path = tableau_path(t, tableaux::syt_label, 3)?;
    labelpath_to_perm(&path.shifted(-TABLEAU_SHIFT.0, -TABLEAU_SHIFT.1), Parity::Even)
}

/// Brings an odd-length alternating permutation to down-up form: up-down
/// inputs are reverse-complemented, down-up inputs are returned unchanged.
pub fn to_down_up(w: &Permutation) -> Permutation {
    if w.len() >= 2 && w.is_alternating(AlternationConvention::UpDown) {
        w.reverse_complement()
    } else {
        w.clone()
    }
}

/// `A'_{2n+1}(2143) -> SHSYT(n+2,n+1,n)`. Up-down inputs are accepted and
/// translated by reverse-complement first.
pub fn odd_perm_to_shsyt(w: &Permutation) -> Result<Tableau> {
    if Parity::of_len(w.len()) != Parity::Odd {
        return Err(Error::Precondition(format!("{w} has even length")));
    }
    let w = to_down_up(w);
    let path = perm_to_labelpath(&w)?.shifted(TABLEAU_SHIFT.0, TABLEAU_SHIFT.1);
    path.labels()
        .iter()
        .try_fold(tableaux::shifted_root(), |t, &target| tableaux::shsyt_child(&t, target))
}

/// `SHSYT(n+2,n+1,n) -> A'_{2n+1}(2143)`, in down-up form.
pub fn shsyt_to_odd_perm(t: &Tableau) -> Result<Permutation> {
    tableaux::shsyt_label(t)?;
    let path = tableau_path(t, tableaux::shsyt_label, 3)?;
    labelpath_to_perm(&path.shifted(-TABLEAU_SHIFT.0, -TABLEAU_SHIFT.1), Parity::Odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::{generate_avoiders, ClassSpec};
    use crate::gentree::GrowthRule;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn l(a: i64, b: i64) -> Label {
        Label::new(a, b)
    }

    #[test]
    fn label_examples() {
        assert_eq!(perm_label_2143(&p("68143527")).unwrap(), l(2, 5));
        assert_eq!(perm_label_2143(&p("35462718")).unwrap(), l(1, 3));
        assert_eq!(perm_label_2143(&p("12")).unwrap(), l(1, 3));
        assert_eq!(perm_label_2143(&p("1")).unwrap(), l(0, 2));
        assert_eq!(perm_label_2143(&p("213")).unwrap(), l(1, 3));
        assert_eq!(perm_label_2143(&p("312")).unwrap(), l(1, 4));
        assert!(perm_label_2143(&p("21")).is_err());
        assert!(perm_label_2143(&p("132")).is_err());
        assert!(perm_label_2143(&p("214365")).is_err());
    }

    #[test]
    fn label_1234_examples() {
        assert_eq!(perm_label_1234(&p("27583614")).unwrap(), l(3, 4));
        assert_eq!(perm_label_1234(&p("68372514")).unwrap(), l(4, 9));
        assert_eq!(perm_label_1234(&p("12")).unwrap(), l(2, 3));
        assert!(perm_label_1234(&p("123")).is_err());
        assert!(perm_label_1234(&p("13254768")).is_err());
    }

    #[test]
    fn child_examples() {
        assert_eq!(child_perm_2143(&p("12"), l(1, 3)).unwrap(), p("2314"));
        assert_eq!(child_perm_2143(&p("1"), l(1, 4)).unwrap(), p("312"));
        assert_eq!(child_perm_2143(&p("1"), l(1, 3)).unwrap(), p("213"));
        assert_eq!(p("68143527").extend(3).unwrap(), p("791546283"));
        assert!(matches!(child_perm_2143(&p("12"), l(3, 5)), Err(Error::Domain(_))));
        assert!(matches!(child_perm_2143(&p("12"), l(1, 6)), Err(Error::Domain(_))));
    }

    /// The children of `12` found by trying every pair of appended values.
    #[test]
    fn root_children_by_exhaustion() {
        let q = p("2143");
        let kids: Vec<Permutation> = Permutation::all(4)
            .filter(|w| {
                w.is_alternating(AlternationConvention::UpDown) && w.avoids(&q) && w.prefix(2) == p("12")
            })
            .collect();
        assert_eq!(kids.len(), 5);
        let with_13: Vec<_> = kids
            .iter()
            .filter(|w| perm_label_2143(w).unwrap() == l(1, 3))
            .collect();
        assert_eq!(with_13, vec![&p("2314")]);
    }

    #[test]
    fn label_path_examples() {
        assert!(perm_to_labelpath(&p("12")).unwrap().is_empty());
        assert_eq!(perm_to_labelpath(&p("2314")).unwrap(), LabelPath(vec![l(1, 3)]));
        assert_eq!(labelpath_to_perm(&LabelPath(vec![l(1, 3)]), Parity::Even).unwrap(), p("2314"));
        assert_eq!(labelpath_to_perm(&LabelPath::default(), Parity::Odd).unwrap(), p("1"));
        assert!(labelpath_to_perm(&LabelPath(vec![l(4, 4)]), Parity::Even).is_err());
    }

    #[test]
    fn tableau_examples() {
        assert_eq!(perm_to_tableau(&p("12")).unwrap().to_string(), "1;2;3");
        assert_eq!(perm_to_tableau(&p("2314")).unwrap().to_string(), "1,4;2,5;3,6");
        let t = Tableau::parse("1,4;2,5;3,6", false).unwrap();
        assert_eq!(tableau_to_perm(&t).unwrap(), p("2314"));
        assert_eq!(odd_perm_to_shsyt(&p("1")).unwrap(), tableaux::shifted_root());
        let img = odd_perm_to_shsyt(&p("312")).unwrap();
        assert_eq!(tableaux::shsyt_label(&img).unwrap(), l(2, 4));
        assert_eq!(shsyt_to_odd_perm(&img).unwrap(), p("312"));
        assert!(perm_to_tableau(&p("213")).is_err());
        assert!(odd_perm_to_shsyt(&p("12")).is_err());
    }

    #[test]
    fn up_down_odd_inputs_go_through_reverse_complement() {
        // 132 is up-down; its reverse-complement 213 is down-up
        assert_eq!(to_down_up(&p("132")), p("213"));
        assert_eq!(odd_perm_to_shsyt(&p("132")).unwrap(), odd_perm_to_shsyt(&p("213")).unwrap());
        assert_eq!(to_down_up(&p("1")), p("1"));
    }

    #[test]
    fn children_realise_the_rule_exactly() {
        for parity in [Parity::Even, Parity::Odd] {
            let rule = parity.rule();
            for len in (parity.root().len()..=7).step_by(2) {
                let conv = parity.convention();
                for u in generate_avoiders(len, &pattern_2143(), ClassSpec::Alternating(conv)).unwrap() {
                    let label = perm_label_2143(&u).unwrap();
                    let mut kids: Vec<Permutation> = rule
                        .children(label)
                        .into_iter()
                        .map(|target| {
                            let w = child_perm_2143(&u, target).unwrap();
                            assert_eq!(perm_label_2143(&w).unwrap(), target);
                            assert_eq!(w.prefix(len), u);
                            w
                        })
                        .collect();
                    kids.sort();
                    let mut actual: Vec<Permutation> =
                        generate_avoiders(len + 2, &pattern_2143(), ClassSpec::Alternating(conv))
                            .unwrap()
                            .filter(|w| w.prefix(len) == u)
                            .collect();
                    actual.sort();
                    assert_eq!(kids, actual, "{u}");
                }
            }
        }
    }
}
