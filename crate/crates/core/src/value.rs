//! Scalar constants shared by domains, tuples and bindings.

use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

/// An interned symbol. Equality and ordering are by the symbol's text, so
/// two symbols interned through different tables still compare correctly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

/// A totally ordered constant: every `Int` sorts before every `Sym`, integers
/// compare numerically and symbols byte-wise by their text.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Int(i64),
    Sym(Symbol),
}

impl Value {
    /// Builds a symbol value without going through a [`SymbolTable`].
    pub fn sym(text: &str) -> Self {
        Value::Sym(Symbol(Arc::from(text)))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            Value::Sym(_) => None,
        }
    }

    /// Parses a textual constant: integer when the whole text is a signed
    /// integer, symbol otherwise.
    pub fn parse_lenient(text: &str, symbols: &mut SymbolTable) -> Self {
        match text.parse::<i64>() {
            Ok(i) => Value::Int(i),
            Err(_) => symbols.intern(text),
        }
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Sym(s) => f.write_str(s.as_str()),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Sym(s) => write!(f, "{s:?}"),
        }
    }
}

/// Deduplicates symbol text so equal symbols share one allocation.
#[derive(Debug, Default, Clone)]
pub struct SymbolTable {
    symbols: HashSet<Symbol>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, text: &str) -> Value {
        if let Some(sym) = self.symbols.get(text) {
            return Value::Sym(sym.clone());
        }
        let sym = Symbol(Arc::from(text));
        self.symbols.insert(sym.clone());
        Value::Sym(sym)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_value() -> impl Strategy<Value = Value> {
        prop_oneof![
            any::<i64>().prop_map(Value::Int),
            "[a-z]{0,4}".prop_map(|s| Value::sym(&s)),
        ]
    }

    #[test]
    fn ints_precede_symbols() {
        assert!(Value::Int(i64::MAX) < Value::sym(""));
        assert!(Value::Int(-3) < Value::Int(2));
        assert!(Value::sym("a") < Value::sym("b"));
        assert!(Value::sym("Z") < Value::sym("a"));
    }

    #[test]
    fn interning_preserves_equality_and_order() {
        let mut table = SymbolTable::new();
        let b = table.intern("b");
        let a = table.intern("a");
        assert_eq!(table.intern("b"), b);
        assert_eq!(table.len(), 2);
        assert!(a < b);
        assert_eq!(a, Value::sym("a"));
    }

    #[test]
    fn lenient_parse() {
        let mut table = SymbolTable::new();
        assert_eq!(Value::parse_lenient("-42", &mut table), Value::Int(-42));
        assert_eq!(Value::parse_lenient("4x", &mut table), Value::sym("4x"));
    }

    proptest! {
        #[test]
        fn order_is_strict_total(a in arb_value(), b in arb_value(), c in arb_value()) {
            // totality + antisymmetry
            let lt = a < b;
            let gt = a > b;
            let eq = a == b;
            prop_assert_eq!(lt as u8 + gt as u8 + eq as u8, 1);
            // transitivity
            if a < b && b < c {
                prop_assert!(a < c);
            }
        }
    }
}
