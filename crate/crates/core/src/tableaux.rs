//! Ordinary and shifted standard Young tableaux.
//!
//! Boxes are addressed by 1-based `(row, column)`. In a shifted shape row
//! `i` occupies columns `i ..= i + len_i - 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gentree::Label;
use crate::scalar::{factorial, Count};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    rows: Vec<usize>,
    shifted: bool,
}

impl Shape {
    pub fn new(rows: Vec<usize>, shifted: bool) -> Result<Self> {
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        let ok = rows.windows(2).all(|w| {
            if shifted {
                w[0] > w[1]
            } else {
                w[0] >= w[1]
            }
        }) && !rows.contains(&0);
        if !ok {
            let kind = if shifted { "strictly" } else { "weakly" };
            return Err(Error::Precondition(format!(
                "row lengths {rows:?} are not {kind} decreasing"
            )));
        }
        Ok(Shape { rows, shifted })
    }

    pub fn ordinary(rows: &[usize]) -> Result<Self> {
        Shape::new(rows.to_vec(), false)
    }

    pub fn shifted(rows: &[usize]) -> Result<Self> {
        Shape::new(rows.to_vec(), true)
    }

    /// `<n, n, n>`
    pub fn rectangle3(n: usize) -> Self {
        Shape::new(vec![n; 3], false).unwrap()
    }

    /// Shifted `<n+2, n+1, n>`
    pub fn staircase3(n: usize) -> Self {
        Shape::new(vec![n + 2, n + 1, n], true).unwrap()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// First column of a 1-based row.
    pub fn row_start(&self, row: usize) -> usize {
        if self.shifted {
            row
        } else {
            1
        }
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        row >= 1
            && row <= self.rows.len()
            && col >= self.row_start(row)
            && col < self.row_start(row) + self.rows[row - 1]
    }

    /// Hook length of a box. For shifted shapes the hook also takes in all
    /// of row `col + 1` once its column reaches the diagonal.
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.row_start(row) + self.rows[row - 1] - 1 - col;
        let leg = (row + 1..=self.rows.len())
            .filter(|&r| self.contains_box(r, col))
            .count();
        let diagonal = if self.shifted && col < self.rows.len() {
            self.rows[col]
        } else {
            0
        };
        arm + leg + 1 + diagonal
    }

    fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, &len)| {
            let start = self.row_start(i + 1);
            (start..start + len).map(move |c| (i + 1, c))
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(usize::to_string).collect();
        let star = if self.shifted { "*" } else { "" };
        write!(f, "<{}>{star}", parts.join(","))
    }
}

/// A standard filling of a (possibly shifted) diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    shifted: bool,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// Checks that the rows form a standard filling of their shape.
    pub fn new(rows: Vec<Vec<u32>>, shifted: bool) -> Result<Self> {
        let t = Tableau { shifted, rows };
        t.shape()?;
        let m = t.size();
        let mut seen = vec![false; m + 1];
        for &v in t.rows.iter().flatten() {
            if v == 0 || v as usize > m || seen[v as usize] {
                return Err(Error::Precondition(format!("entries of {t} are not 1..={m}")));
            }
            seen[v as usize] = true;
        }
        for r in 1..=t.rows.len() {
            let row = &t.rows[r - 1];
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Precondition(format!("row {r} of {t} does not increase")));
            }
            if r > 1 {
                let start = t.row_start(r);
                for (k, &v) in row.iter().enumerate() {
                    if t.entry(r - 1, start + k).map_or(false, |above| above >= v) {
                        return Err(Error::Precondition(format!(
                            "column {} of {t} does not increase",
                            start + k
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    fn from_rows_unchecked(rows: Vec<Vec<u32>>, shifted: bool) -> Self {
        let t = Tableau { shifted, rows };
        debug_assert!(Tableau::new(t.rows.clone(), shifted).is_ok(), "{t}");
        t
    }

    pub fn shape(&self) -> Result<Shape> {
        Shape::new(self.rows.iter().map(Vec::len).collect(), self.shifted)
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn row_start(&self, row: usize) -> usize {
        if self.shifted {
            row
        } else {
            1
        }
    }

    /// Entry at 1-based `(row, column)`, if that box exists.
    pub fn entry(&self, row: usize, col: usize) -> Option<u32> {
        let r = self.rows.get(row.checked_sub(1)?)?;
        let k = col.checked_sub(self.row_start(row))?;
        r.get(k).copied()
    }

    /// Parses `"1,2;3,5;4,6"`: rows separated by `;`, entries by `,`.
    pub fn parse(s: &str, shifted: bool) -> Result<Self> {
        let rows = s
            .trim()
            .split(';')
            .filter(|r| !r.trim().is_empty())
            .map(|r| {
                r.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad tableau entry {t:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(rows, shifted)
    }

    /// The tableau left after deleting the last entry of every row,
    /// renumbered to `1..`. Only meaningful when all rows end in one column.
    pub fn drop_last_column(&self) -> Tableau {
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r[..r.len() - 1].to_vec())
            .filter(|r| !r.is_empty())
            .collect();
        let mut all: Vec<u32> = rows.iter().flatten().copied().collect();
        all.sort_unstable();
        for v in rows.iter_mut().flatten() {
            *v = all.binary_search(v).unwrap() as u32 + 1;
        }
        Tableau::from_rows_unchecked(rows, self.shifted)
    }

    /// Appends one entry to each of the first three rows. Old entries are
    /// renumbered around the two new values `top < middle`, so an old entry
    /// lands on `s`, `s + 1` or `s + 2`.
    fn append_column(&self, top: u32, middle: u32, bottom: u32) -> Tableau {
        let shift = |s: u32| {
            if s < top {
                s
            } else if s + 1 < middle {
                s + 1
            } else {
                s + 2
            }
        };
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&s| shift(s)).collect())
            .collect();
        rows.resize(3, Vec::new());
        rows[0].push(top);
        rows[1].push(middle);
        rows[2].push(bottom);
        Tableau::from_rows_unchecked(rows, self.shifted)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

/// Calls `visit` on every standard filling of `shape`, placing
/// `1, 2, ..., m` in turn into cells whose left and upper neighbours are
/// already filled.
pub fn for_each_standard_filling(shape: &Shape, mut visit: impl FnMut(&Tableau)) {
    let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&l| Vec::with_capacity(l)).collect();
    fill(shape, &mut rows, 1, shape.size() as u32, &mut visit);
}

fn fill(shape: &Shape, rows: &mut Vec<Vec<u32>>, next: u32, m: u32, visit: &mut impl FnMut(&Tableau)) {
    if next > m {
        visit(&Tableau { shifted: shape.is_shifted(), rows: rows.clone() });
        return;
    }
    for r in 1..=rows.len() {
        let filled = rows[r - 1].len();
        if filled == shape.rows()[r - 1] {
            continue;
        }
        let col = shape.row_start(r) + filled;
        if r > 1 {
            let above_filled = shape.row_start(r - 1) + rows[r - 2].len();
            if shape.contains_box(r - 1, col) && col >= above_filled {
                continue;
            }
        }
        rows[r - 1].push(next);
        fill(shape, rows, next + 1, m, visit);
        rows[r - 1].pop();
    }
}

/// All standard Young tableaux of an ordinary shape.
pub fn generate_syt(shape: &Shape) -> Result<Vec<Tableau>> {
    if shape.is_shifted() {
        return Err(Error::Precondition(format!("{shape} is shifted")));
    }
    let mut out = Vec::new();
    for_each_standard_filling(shape, |t| out.push(t.clone()));
    Ok(out)
}

/// All shifted standard Young tableaux of a shifted shape.
pub fn generate_shifted_syt(shape: &Shape) -> Result<Vec<Tableau>> {
    if !shape.is_shifted() {
        return Err(Error::Precondition(format!("{shape} is not shifted")));
    }
    let mut out = Vec::new();
    for_each_standard_filling(shape, |t| out.push(t.clone()));
    Ok(out)
}

fn hook_quotient<C: Count>(shape: &Shape) -> C {
    let mut denom = C::one();
    for (r, c) in shape.boxes() {
        denom = denom * C::from_usize_exact(shape.hook(r, c));
    }
    factorial::<C>(shape.size()) / denom
}

/// Number of SYT of an ordinary shape by the hook-length formula.
pub fn hook_count<C: Count>(shape: &Shape) -> Result<C> {
    if shape.is_shifted() {
        return Err(Error::Precondition(format!("{shape} is shifted")));
    }
    Ok(hook_quotient(shape))
}

/// Number of shifted SYT of a shifted shape by the shifted hook-length formula.
pub fn shifted_hook_count<C: Count>(shape: &Shape) -> Result<C> {
    if !shape.is_shifted() {
        return Err(Error::Precondition(format!("{shape} is not shifted")));
    }
    Ok(hook_quotient(shape))
}

fn rectangle_width(t: &Tableau) -> Result<usize> {
    let lens: Vec<usize> = t.rows.iter().map(Vec::len).collect();
    match lens.as_slice() {
        [a, b, c] if !t.shifted && a == b && b == c && *a >= 1 => Ok(*a),
        _ => Err(Error::Precondition(format!("{t} is not a standard tableau of shape <n,n,n>"))),
    }
}

/// `n` for a shifted tableau of shape `<n+2, n+1, n>`.
fn staircase_offset(t: &Tableau) -> Result<usize> {
    let lens: Vec<usize> = t.rows.iter().map(Vec::len).collect();
    let bad = || Error::Precondition(format!("{t} is not a shifted tableau of shape <n+2,n+1,n>"));
    if !t.shifted {
        return Err(bad());
    }
    match lens.as_slice() {
        [2, 1] => Ok(0),
        [a, b, c] if *c >= 1 && *a == c + 2 && *b == c + 1 => Ok(*c),
        _ => Err(bad()),
    }
}

/// `(3n+1 - S(2,n), 3n+1 - S(1,n))` for `S` of shape `<n,n,n>`.
pub fn syt_label(t: &Tableau) -> Result<Label> {
    let n = rectangle_width(t)?;
    let top = 3 * n as i64 + 1;
    Ok(Label::new(
        top - t.entry(2, n).unwrap() as i64,
        top - t.entry(1, n).unwrap() as i64,
    ))
}

/// The unique child of `t` in `SYT(n+1,n+1,n+1)` carrying `target`.
pub fn syt_child(t: &Tableau, target: Label) -> Result<Tableau> {
    let n = rectangle_width(t)?;
    let parent = syt_label(t)?;
    if !crate::gentree::RECT_SYT.admits(parent, target) {
        return Err(Error::Domain(format!("{target} is not a child label of {parent}")));
    }
    let base = 3 * n as i64 + 4;
    Ok(t.append_column(
        (base - target.b) as u32,
        (base - target.a) as u32,
        3 * n as u32 + 3,
    ))
}

/// Label of a shifted tableau of shape `<n+2, n+1, n>`, read from its last
/// column: `(3n+4 - T(2, n+2), 3n+4 - T(1, n+2))`.
pub fn shsyt_label(t: &Tableau) -> Result<Label> {
    let n = staircase_offset(t)?;
    let top = 3 * n as i64 + 4;
    Ok(Label::new(
        top - t.entry(2, n + 2).unwrap() as i64,
        top - t.entry(1, n + 2).unwrap() as i64,
    ))
}

/// The unique child of a shifted `<n+2,n+1,n>` tableau in shape
/// `<n+3,n+2,n+1>` carrying `target`.
pub fn shsyt_child(t: &Tableau, target: Label) -> Result<Tableau> {
    let n = staircase_offset(t)?;
    let parent = shsyt_label(t)?;
    if !crate::gentree::SHIFTED_SYT.admits(parent, target) {
        return Err(Error::Domain(format!("{target} is not a child label of {parent}")));
    }
    let base = 3 * n as i64 + 7;
    Ok(t.append_column(
        (base - target.b) as u32,
        (base - target.a) as u32,
        3 * n as u32 + 6,
    ))
}

/// The single tableau `1/2/3`.
pub fn rect_root() -> Tableau {
    Tableau::from_rows_unchecked(vec![vec![1], vec![2], vec![3]], false)
}

/// The single shifted tableau of shape `<2,1>`.
pub fn shifted_root() -> Tableau {
    Tableau::from_rows_unchecked(vec![vec![1, 2], vec![3]], true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentree::{GrowthRule, RECT_SYT, SHIFTED_SYT};
    use num_bigint::BigUint;
    use std::collections::BTreeSet;

    fn t(s: &str) -> Tableau {
        Tableau::parse(s, false).unwrap()
    }

    fn st(s: &str) -> Tableau {
        Tableau::parse(s, true).unwrap()
    }

    fn l(a: i64, b: i64) -> Label {
        Label::new(a, b)
    }

    #[test]
    fn generation_examples() {
        let count = |rows: &[usize]| generate_syt(&Shape::ordinary(rows).unwrap()).unwrap().len();
        assert_eq!(count(&[1, 1, 1]), 1);
        assert_eq!(count(&[2, 2, 2]), 5);
        assert_eq!(count(&[4, 4, 4]), 462);
        let scount = |rows: &[usize]| generate_shifted_syt(&Shape::shifted(rows).unwrap()).unwrap().len();
        assert_eq!(scount(&[2, 1]), 1);
        assert_eq!(scount(&[3, 2, 1]), 2);
        assert_eq!(scount(&[5, 4, 3]), 110);
        assert!(generate_syt(&Shape::staircase3(1)).is_err());
        assert!(generate_shifted_syt(&Shape::rectangle3(1)).is_err());
    }

    #[test]
    fn generated_tableaux_are_standard_and_distinct() {
        for shape in [Shape::rectangle3(3), Shape::ordinary(&[4, 2, 1]).unwrap(), Shape::staircase3(2)] {
            let all = if shape.is_shifted() {
                generate_shifted_syt(&shape).unwrap()
            } else {
                generate_syt(&shape).unwrap()
            };
            let distinct: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for tab in &all {
                assert!(Tableau::new(tab.rows().to_vec(), shape.is_shifted()).is_ok());
                assert_eq!(tab.shape().unwrap(), shape);
            }
        }
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_count::<u64>(&Shape::rectangle3(2)).unwrap(), 5);
        assert_eq!(hook_count::<u64>(&Shape::ordinary(&[1]).unwrap()).unwrap(), 1);
        assert_eq!(hook_count::<u64>(&Shape::rectangle3(5)).unwrap(), 6006);
        assert_eq!(shifted_hook_count::<u64>(&Shape::shifted(&[2, 1]).unwrap()).unwrap(), 1);
        assert_eq!(shifted_hook_count::<u64>(&Shape::shifted(&[3, 2, 1]).unwrap()).unwrap(), 2);
        assert_eq!(shifted_hook_count::<u64>(&Shape::staircase3(4)).unwrap(), 1274);
        assert!(hook_count::<u64>(&Shape::staircase3(1)).is_err());
        assert!(shifted_hook_count::<u64>(&Shape::rectangle3(1)).is_err());
    }

    #[test]
    fn hooks_match_generation_on_assorted_shapes() {
        for rows in [vec![3, 1], vec![4, 2, 2, 1], vec![2, 2, 1, 1], vec![5], vec![3, 3, 2]] {
            let shape = Shape::ordinary(&rows).unwrap();
            let n = generate_syt(&shape).unwrap().len() as u64;
            assert_eq!(hook_count::<u64>(&shape).unwrap(), n, "{shape}");
        }
        for rows in [vec![4, 2], vec![5, 3, 1], vec![4, 3, 2, 1], vec![6, 2], vec![5, 4, 2, 1]] {
            let shape = Shape::shifted(&rows).unwrap();
            let n = generate_shifted_syt(&shape).unwrap().len() as u64;
            assert_eq!(shifted_hook_count::<u64>(&shape).unwrap(), n, "{shape}");
        }
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::ordinary(&[1, 2]).is_err());
        assert!(Shape::shifted(&[2, 2]).is_err());
        assert_eq!(Shape::ordinary(&[2, 1, 0]).unwrap().rows(), &[2, 1]);
        assert!(Tableau::parse("1,3;2", false).is_ok());
        assert!(Tableau::parse("2,1", false).is_err());
        assert!(Tableau::parse("1,2;3,4;5", true).is_err());
        assert!(Tableau::parse("1,3;2,4", true).is_err());
        assert!(Tableau::parse("1,2;2", false).is_err());
        assert!(Tableau::parse("1,x", false).is_err());
    }

    #[test]
    fn label_examples() {
        assert_eq!(syt_label(&rect_root()).unwrap(), l(2, 3));
        assert_eq!(syt_label(&t("1,2;3,5;4,6")).unwrap(), l(2, 5));
        assert_eq!(syt_label(&t("1,3;2,4;5,6")).unwrap(), l(3, 4));
        assert!(syt_label(&t("1,2;3")).is_err());
        assert_eq!(shsyt_label(&shifted_root()).unwrap(), l(1, 2));
        assert_eq!(shsyt_label(&st("1,2,4;3,5;6")).unwrap(), l(2, 3));
        assert_eq!(shsyt_label(&st("1,2,3;4,5;6")).unwrap(), l(2, 4));
        assert!(shsyt_label(&rect_root()).is_err());
    }

    #[test]
    fn child_examples() {
        assert_eq!(syt_child(&rect_root(), l(2, 5)).unwrap(), t("1,2;3,5;4,6"));
        assert_eq!(syt_child(&rect_root(), l(2, 3)).unwrap(), t("1,4;2,5;3,6"));
        assert_eq!(shsyt_child(&shifted_root(), l(2, 4)).unwrap(), st("1,2,3;4,5;6"));
        assert_eq!(shsyt_child(&shifted_root(), l(2, 3)).unwrap(), st("1,2,4;3,5;6"));
        assert!(matches!(syt_child(&rect_root(), l(1, 3)), Err(Error::Domain(_))));
        assert!(matches!(syt_child(&rect_root(), l(2, 6)), Err(Error::Domain(_))));
        assert!(matches!(shsyt_child(&shifted_root(), l(2, 5)), Err(Error::Domain(_))));
    }

    #[test]
    fn root_child_list_matches_listed_order() {
        let kids: Vec<String> = RECT_SYT
            .children(l(2, 3))
            .into_iter()
            .map(|target| syt_child(&rect_root(), target).unwrap().to_string())
            .collect();
        assert_eq!(
            kids,
            ["1,4;2,5;3,6", "1,3;2,5;4,6", "1,2;3,5;4,6", "1,3;2,4;5,6", "1,2;3,4;5,6"]
        );
    }

    #[test]
    fn children_are_exactly_the_one_column_extensions() {
        for n in 1..=3 {
            let parents = generate_syt(&Shape::rectangle3(n)).unwrap();
            let next = generate_syt(&Shape::rectangle3(n + 1)).unwrap();
            for s in &parents {
                let label = syt_label(s).unwrap();
                let built: BTreeSet<Tableau> = RECT_SYT
                    .children(label)
                    .into_iter()
                    .map(|target| {
                        let c = syt_child(s, target).unwrap();
                        assert_eq!(syt_label(&c).unwrap(), target);
                        assert_eq!(&c.drop_last_column(), s);
                        c
                    })
                    .collect();
                assert_eq!(built.len(), RECT_SYT.children(label).len());
                let actual: BTreeSet<Tableau> =
                    next.iter().filter(|c| &c.drop_last_column() == s).cloned().collect();
                assert_eq!(built, actual);
            }
        }
    }

    #[test]
    fn shifted_children_are_exactly_the_one_column_extensions() {
        for n in 0..=2 {
            let parents = generate_shifted_syt(&Shape::staircase3(n)).unwrap();
            let next = generate_shifted_syt(&Shape::staircase3(n + 1)).unwrap();
            for s in &parents {
                let label = shsyt_label(s).unwrap();
                let built: BTreeSet<Tableau> = SHIFTED_SYT
                    .children(label)
                    .into_iter()
                    .map(|target| {
                        let c = shsyt_child(s, target).unwrap();
                        assert_eq!(shsyt_label(&c).unwrap(), target);
                        c
                    })
                    .collect();
                let actual: BTreeSet<Tableau> =
                    next.iter().filter(|c| &c.drop_last_column() == s).cloned().collect();
                assert_eq!(built, actual);
            }
        }
    }

    #[test]
    fn staircase_third_row_ends_with_its_fixed_value() {
        for n in 1..=4 {
            for tab in generate_shifted_syt(&Shape::staircase3(n)).unwrap() {
                assert_eq!(tab.entry(3, n + 2), Some(3 * n as u32 + 3));
            }
        }
    }

    #[test]
    fn rectangle_hooks_match_generation() {
        for n in 1..=5 {
            let shape = Shape::rectangle3(n);
            let generated = BigUint::from(generate_syt(&shape).unwrap().len());
            assert_eq!(hook_count::<BigUint>(&shape).unwrap(), generated);
        }
        for n in 0..=4 {
            let shape = Shape::staircase3(n);
            let generated = BigUint::from(generate_shifted_syt(&shape).unwrap().len());
            assert_eq!(shifted_hook_count::<BigUint>(&shape).unwrap(), generated);
        }
    }

    #[test]
    fn text_form_round_trips() {
        let tab = t("1,2;3,5;4,6");
        assert_eq!(tab.to_string(), "1,2;3,5;4,6");
        assert_eq!(Tableau::parse(&tab.to_string(), false).unwrap(), tab);
        let s = st("1,2,4;3,5;6");
        assert_eq!(s.entry(2, 2), Some(3));
        assert_eq!(s.entry(3, 3), Some(6));
        assert_eq!(s.entry(2, 1), None);
    }
}
