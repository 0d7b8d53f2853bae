#include "foil/reference.hpp"

#include "foil/errors.hpp"

namespace foil::reference {

// Plain textbook satisfaction. Atoms are checked by scanning the tuple set
// linearly; quantifiers copy the environment per element. No sharing with
// the main evaluator beyond the public AST.
bool naive_eval(const FiniteStructure& a, const Formula& f,
                const std::map<std::string, int>& asg) {
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Equal: {
      auto ax = asg.find(f.args()[0]);
      auto ay = asg.find(f.args()[1]);
      if (ax == asg.end() || ay == asg.end())
        throw DomainError("naive_eval: unassigned variable in equality");
      return ax->second == ay->second;
    }
    case Kind::Atom: {
      std::vector<int> tuple;
      for (const auto& v : f.args()) {
        auto it = asg.find(v);
        if (it == asg.end())
          throw DomainError("naive_eval: unassigned variable " + v);
        tuple.push_back(it->second);
      }
      for (const auto& t : a.tuples(f.rel()))
        if (t == tuple) return true;
      return false;
    }
    case Kind::Not:
      return !naive_eval(a, f.child(), asg);
    case Kind::And:
      return naive_eval(a, f.left(), asg) && naive_eval(a, f.right(), asg);
    case Kind::Or:
      return naive_eval(a, f.left(), asg) || naive_eval(a, f.right(), asg);
    case Kind::Implies:
      return !naive_eval(a, f.left(), asg) || naive_eval(a, f.right(), asg);
    case Kind::Exists: {
      for (int e = 0; e < a.size(); ++e) {
        std::map<std::string, int> next(asg);
        next[f.var()] = e;
        if (naive_eval(a, f.body(), next)) return true;
      }
      return false;
    }
    case Kind::Forall: {
      for (int e = 0; e < a.size(); ++e) {
        std::map<std::string, int> next(asg);
        next[f.var()] = e;
        if (!naive_eval(a, f.body(), next)) return false;
      }
      return true;
    }
  }
  throw DomainError("naive_eval: unknown formula kind");
}

}  // namespace foil::reference
