//! Mutable type graph with a binding trail for backtracking.

use std::collections::HashMap;

use super::SimpleType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeRef(u32);

impl TypeRef {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Var(Option<TypeRef>),
    Arrow(TypeRef, TypeRef),
}

#[derive(Debug)]
pub struct OccursFailure {
    pub var: TypeRef,
    pub ty: TypeRef,
}

/// Variables are bound in place; every binding is recorded on the trail so
/// that [`Store::undo`] can return to an earlier [`Store::mark`].
#[derive(Debug, Clone, Default)]
pub struct Store {
    nodes: Vec<Node>,
    trail: Vec<TypeRef>,
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: Node) -> TypeRef {
        let r = TypeRef(u32::try_from(self.nodes.len()).expect("type store overflow"));
        self.nodes.push(node);
        r
    }

    pub fn fresh(&mut self) -> TypeRef {
        self.push(Node::Var(None))
    }

    pub fn arrow(&mut self, domain: TypeRef, codomain: TypeRef) -> TypeRef {
        self.push(Node::Arrow(domain, codomain))
    }

    /// Adds `t` to the store, sharing one node per named variable via `vars`.
    pub fn load(&mut self, t: &SimpleType, vars: &mut HashMap<u32, TypeRef>) -> TypeRef {
        match t {
            SimpleType::Var(v) => *vars.entry(*v).or_insert_with(|| self.fresh()),
            SimpleType::Arrow(a, b) => {
                let a = self.load(a, vars);
                let b = self.load(b, vars);
                self.arrow(a, b)
            }
        }
    }

    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().expect("trail above mark");
            self.nodes[var.index()] = Node::Var(None);
        }
    }

    /// Follows variable bindings to an unbound variable or an arrow.
    pub fn resolve(&self, mut t: TypeRef) -> TypeRef {
        while let Node::Var(Some(next)) = self.nodes[t.index()] {
            t = next;
        }
        t
    }

    fn occurs(&self, var: TypeRef, t: TypeRef) -> bool {
        let mut stack = vec![t];
        while let Some(t) = stack.pop() {
            let t = self.resolve(t);
            if t == var {
                return true;
            }
            if let Node::Arrow(a, b) = self.nodes[t.index()] {
                stack.push(a);
                stack.push(b);
            }
        }
        false
    }

    fn bind(&mut self, var: TypeRef, t: TypeRef) -> Result<(), OccursFailure> {
        if self.occurs(var, t) {
            return Err(OccursFailure { var, ty: t });
        }
        self.nodes[var.index()] = Node::Var(Some(t));
        self.trail.push(var);
        Ok(())
    }

    /// Unifies two types, checking occurs on every binding. On failure some
    /// bindings may already have been made; undo to a mark taken beforehand.
    pub fn unify(&mut self, a: TypeRef, b: TypeRef) -> Result<(), OccursFailure> {
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            let a = self.resolve(a);
            let b = self.resolve(b);
            if a == b {
                continue;
            }
            match (self.nodes[a.index()], self.nodes[b.index()]) {
                (Node::Var(_), _) => self.bind(a, b)?,
                (_, Node::Var(_)) => self.bind(b, a)?,
                (Node::Arrow(a1, a2), Node::Arrow(b1, b2)) => {
                    stack.push((a2, b2));
                    stack.push((a1, b1));
                }
            }
        }
        Ok(())
    }

    /// Reads back a fully resolved type, naming unbound variables by `name`.
    pub fn extract(&self, t: TypeRef, name: impl Fn(TypeRef) -> u32 + Copy) -> SimpleType {
        let t = self.resolve(t);
        match self.nodes[t.index()] {
            Node::Var(_) => SimpleType::Var(name(t)),
            Node::Arrow(a, b) => SimpleType::arrow(self.extract(a, name), self.extract(b, name)),
        }
    }

    /// Reads back a type with variables renamed canonically.
    pub fn extract_canonical(&self, t: TypeRef) -> SimpleType {
        self.extract(t, |r| r.0).canonical()
    }
}
