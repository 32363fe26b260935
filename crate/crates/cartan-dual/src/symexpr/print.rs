//! Precedence-aware printing. The output parses back to the same normal
//! form with the same evaluation order, so print/parse round trips are
//! exact at the IEEE level.

use super::{rational_is_negative, Chart, Expr, Node};
use num::One;

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    pub fn print(&self, chart: &Chart) -> String {
        let mut out = String::new();
        self.write(&mut out, 0, &mut |i, is_param| {
            if is_param {
                chart.params()[i].0.clone()
            } else {
                chart.coords()[i].clone()
            }
        });
        out
    }

    pub(crate) fn print_generic(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0, &mut |i, is_param| {
            if is_param {
                format!("k{i}")
            } else {
                format!("x{i}")
            }
        });
        out
    }

    fn prec(&self) -> u8 {
        match self.node() {
            Node::Const(c) => {
                if rational_is_negative(c) {
                    PREC_ADD
                } else if c.denom().is_one() {
                    PREC_ATOM
                } else {
                    PREC_MUL
                }
            }
            Node::Coord(_) | Node::Param(_) | Node::Func(..) => PREC_ATOM,
            Node::Add(_) | Node::Neg(_) => PREC_ADD,
            Node::Mul(_) | Node::Div(..) => PREC_MUL,
            Node::Pow(..) => PREC_POW,
        }
    }

    fn write(&self, out: &mut String, parent: u8, name: &mut dyn FnMut(usize, bool) -> String) {
        let wrap = self.prec() < parent;
        if wrap {
            out.push('(');
        }
        match self.node() {
            Node::Const(c) => {
                out.push_str(&c.numer().to_string());
                if !c.denom().is_one() {
                    out.push('/');
                    out.push_str(&c.denom().to_string());
                }
            }
            Node::Coord(i) => out.push_str(&name(*i, false)),
            Node::Param(i) => out.push_str(&name(*i, true)),
            Node::Add(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i == 0 {
                        t.write(out, PREC_ADD, name);
                        continue;
                    }
                    match t.node() {
                        Node::Neg(inner) => {
                            out.push_str(" - ");
                            inner.write(out, PREC_MUL, name);
                        }
                        Node::Const(c) if rational_is_negative(c) => {
                            out.push_str(" - ");
                            Expr::rational(-c.clone()).write(out, PREC_MUL, name);
                        }
                        _ => {
                            out.push_str(" + ");
                            t.write(out, PREC_MUL, name);
                        }
                    }
                }
            }
            Node::Mul(factors) => {
                for (i, f) in factors.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    // Later `/` factors must keep their own grouping so the
                    // printed text re-evaluates in the same order.
                    let min = if i > 0 && matches!(f.node(), Node::Div(..)) {
                        PREC_MUL + 1
                    } else {
                        PREC_MUL
                    };
                    f.write(out, min, name);
                }
            }
            Node::Div(n, d) => {
                n.write(out, PREC_MUL, name);
                out.push('/');
                d.write(out, PREC_MUL + 1, name);
            }
            Node::Pow(base, e) => {
                base.write(out, PREC_ATOM, name);
                out.push('^');
                out.push_str(&e.to_string());
            }
            Node::Neg(e) => {
                out.push('-');
                e.write(out, PREC_MUL, name);
            }
            Node::Func(f, arg) => {
                out.push_str(f.name());
                out.push('(');
                arg.write(out, 0, name);
                out.push(')');
            }
        }
        if wrap {
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_expr, Chart, Expr};

    fn chart() -> Chart {
        Chart::new(["t", "r", "th", "ph"], vec![("M".into(), 1.0)]).unwrap()
    }

    #[test]
    fn printing_round_trips_structurally() {
        let c = chart();
        for text in [
            "1 - 2*M/r",
            "r^2*sin(th)",
            "-r^2",
            "(t + r)*(t - r)",
            "1/2*r + 3/4",
            "sqrt(1 - 2*M/r)",
            "sin(th)^2 + cos(th)^2",
            "M/(r^2*sin(th))",
            "r^-2",
            "-(t + r)",
            "2*(M/r)*(M/t)",
        ] {
            let e = parse_expr(text, &c).unwrap();
            let printed = e.print(&c);
            let back = parse_expr(&printed, &c)
                .unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"));
            assert_eq!(e, back, "round trip changed `{text}` -> `{printed}`");
        }
    }

    #[test]
    fn negative_exponent_prints_and_parses() {
        let c = chart();
        let e = Expr::pow(Expr::coord(1), -2);
        assert_eq!(e.print(&c), "r^-2");
        assert_eq!(parse_expr("r^-2", &c).unwrap(), e);
    }
}
