//! LaTeX and CSV renderings of matrices, representations and pole tables.
//! JSON goes through the serde impls on each type.

use crate::analytic::PoleTable;
use crate::coeffs::CoeffMatrix;
use crate::exactnum::Rational;
use crate::relations::{BasisElement, BasisRepresentation};

/// `\left( \begin{array}{c…c} … \end{array} \right)` with inline `p/q`
/// fractions, one row per line.
pub fn matrix_latex(m: &CoeffMatrix) -> String {
    let mut out = String::from("\\left(\n");
    out.push_str(&format!("\\begin{{array}}{{{}}}\n", "c".repeat(m.cols())));
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(Rational::to_string).collect();
        out.push_str(&format!(" {} \\\\\n", cells.join(" & ")));
    }
    out.push_str("\\end{array}\n\\right)");
    out
}

pub fn matrix_csv(m: &CoeffMatrix) -> String {
    let mut out = String::from("c,d,value\n");
    for i in 0..m.rows() {
        for (j, x) in m.row(i).iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", i + 1, j + 1, x));
        }
    }
    out
}

pub fn matrix_text(m: &CoeffMatrix) -> String {
    let cells: Vec<Vec<String>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(Rational::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

/// One signed term `± p \zeta(…)/q`; the first term carries no leading `+`.
fn latex_term(coeff: &Rational, symbol: &str, first: bool) -> String {
    let sign = match (first, coeff.is_negative()) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => "+ ",
        (false, true) => "- ",
    };
    let num = coeff.numer().magnitude().to_string();
    let den = coeff.denom();
    let lead = if num == "1" { String::new() } else { format!("{num} ") };
    if den.to_string() == "1" {
        format!("{sign}{lead}{symbol}")
    } else {
        format!("{sign}{lead}{symbol}/{den}")
    }
}

/// `\zeta(-2m-1, s + 2m+1) &= …` in descending index order, wrapped every
/// three terms when there are more than four.
pub fn representation_latex(rep: &BasisRepresentation) -> String {
    let terms: Vec<String> = rep
        .gamma
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, g)| !g.is_zero())
        .enumerate()
        .map(|(pos, (k, g))| latex_term(g, &BasisElement { c: 2 * k }.latex(), pos == 0))
        .collect();
    let mut out = format!("{} &= ", rep.target().latex());
    let wrap = terms.len() > 4;
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            if wrap && i % 3 == 0 {
                out.push_str(" \\\\\n  &\\quad ");
            } else {
                out.push(' ');
            }
        }
        out.push_str(t);
    }
    out
}

pub fn representations_latex(reps: &[BasisRepresentation]) -> String {
    let lines: Vec<String> = reps.iter().map(representation_latex).collect();
    format!("\\begin{{align*}}\n{}\n\\end{{align*}}", lines.join(", \\\\\n"))
}

pub fn representation_csv_rows(rep: &BasisRepresentation) -> String {
    rep.gamma
        .iter()
        .enumerate()
        .map(|(k, g)| format!("{},{},{}\n", rep.target(), 2 * k, g))
        .collect()
}

pub const REPRESENTATION_CSV_HEADER: &str = "target,basis_index,coeff\n";

pub fn representation_text(rep: &BasisRepresentation) -> String {
    let terms: Vec<String> = rep
        .gamma
        .iter()
        .enumerate()
        .rev()
        .map(|(k, g)| format!("({g})*{}", BasisElement { c: 2 * k }))
        .collect();
    format!("{} = {}", rep.target(), terms.join(" + "))
}

/// Pole table in the `\mbox{at} & s=…, & \quad \mbox{ residue} & …` layout.
pub fn poles_latex(t: &PoleTable) -> String {
    let mut out = String::from("\\begin{array}{cccc}\n");
    for r in &t.records {
        out.push_str(&format!(
            " \\mbox{{at}} & s={}, & \\quad \\mbox{{ residue}} & {} \\\\\n",
            r.location, r.residue
        ));
    }
    out.push_str("\\end{array}");
    out
}

pub fn poles_csv(t: &PoleTable) -> String {
    let mut out = String::from("n,s,residue\n");
    for r in &t.records {
        out.push_str(&format!("{},{},{}\n", t.n, r.location, r.residue));
    }
    out
}

pub fn poles_text(t: &PoleTable) -> String {
    let mut out = format!("poles of zeta(-{n}, s+{n}):", n = t.n);
    for r in &t.records {
        out.push_str(&format!("\n  s = {:>4}  residue {:<16} [{}]", r.location, r.residue.to_string(), r.annotation(t.n)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::pole_table;
    use crate::relations::basis_representation;

    #[test]
    fn representation_line_layout() {
        assert_eq!(representation_latex(&basis_representation(0)), "\\zeta(-1, s + 1) &= \\zeta(0, s)/2");
        assert_eq!(
            representation_latex(&basis_representation(1)),
            "\\zeta(-3, s + 3) &= 3 \\zeta(-2, s + 2)/2 - \\zeta(0, s)/4"
        );
        assert_eq!(
            representation_text(&basis_representation(1)),
            "zeta(-3,s+3) = (3/2)*zeta(-2,s+2) + (-1/4)*zeta(0,s)"
        );
    }

    #[test]
    fn csv_headers() {
        let m = CoeffMatrix::identity(2);
        assert_eq!(matrix_csv(&m), "c,d,value\n1,1,1\n1,2,0\n2,1,0\n2,2,1\n");
        assert!(poles_csv(&pole_table(2)).starts_with("n,s,residue\n2,2,1/3\n"));
        assert_eq!(representation_csv_rows(&basis_representation(0)), "zeta(-1,s+1),0,1/2\n");
    }

    #[test]
    fn pole_latex_rows() {
        let s = poles_latex(&pole_table(2));
        assert!(s.contains("\\mbox{at} & s=0, & \\quad \\mbox{ residue} & 1/6 \\\\"));
    }
}
