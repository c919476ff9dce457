#pragma once

#include <memory>
#include <vector>

#include "gencoord/errors.hpp"

namespace gencoord {

/// Expression graph over elementary operations {constant, variable, add,
/// subtract, multiply, scale, integer power}, sufficient for polynomial
/// vector fields.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Op { Const, Var, Add, Sub, Mul, Scale, Pow };

    Op op = Op::Const;
    double value = 0.0;  // Const payload, Scale factor
    int index = 0;       // Var index, Pow exponent
    ExprPtr lhs;
    ExprPtr rhs;
};

inline ExprPtr constant(double c) {
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Const;
    e->value = c;
    return e;
}

inline ExprPtr var(int i) {
    if (i < 0) throw InvalidArgument("expr: variable index must be non-negative");
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Var;
    e->index = i;
    return e;
}

inline ExprPtr add(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Add;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

inline ExprPtr sub(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Sub;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

inline ExprPtr mul(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Mul;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

inline ExprPtr scale(double s, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Scale;
    e->value = s;
    e->lhs = std::move(a);
    return e;
}

inline ExprPtr ipow(ExprPtr a, int k) {
    if (k < 0) throw InvalidArgument("expr: integer power must be non-negative");
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::Pow;
    e->index = k;
    e->lhs = std::move(a);
    return e;
}

/// Evaluates the graph over any arithmetic scalar T (double, Dual, Jet<...>).
/// `vars[i]` supplies the value of variable i; `one` is T's multiplicative
/// identity, needed because Jet cannot be built from a bare double literal.
template <class T>
T eval_expr(const Expr& e, const std::vector<T>& vars, const T& one) {
    switch (e.op) {
        case Expr::Op::Const:
            return e.value * one;
        case Expr::Op::Var:
            if (e.index >= static_cast<int>(vars.size()))
                throw InvalidArgument("expr: variable index out of range");
            return vars[e.index];
        case Expr::Op::Add:
            return eval_expr(*e.lhs, vars, one) + eval_expr(*e.rhs, vars, one);
        case Expr::Op::Sub:
            return eval_expr(*e.lhs, vars, one) - eval_expr(*e.rhs, vars, one);
        case Expr::Op::Mul:
            return eval_expr(*e.lhs, vars, one) * eval_expr(*e.rhs, vars, one);
        case Expr::Op::Scale:
            return e.value * eval_expr(*e.lhs, vars, one);
        case Expr::Op::Pow: {
            T base = eval_expr(*e.lhs, vars, one);
            T out = one;
            for (int i = 0; i < e.index; ++i) out = out * base;
            return out;
        }
    }
    throw InvalidArgument("unsupported-operation: unknown expression node");
}

}  // namespace gencoord
