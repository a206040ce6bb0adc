#pragma once

#include <cpslice/mackey.hpp>

#include <stdexcept>

namespace cpslice {

inline long unit_inverse_mod(int p, long a) {
    Int rep = Int(((a % p) + p) % p), inv;
    if (mpz_invert(inv.get_mpz_t(), rep.get_mpz_t(), Int(p).get_mpz_t()) == 0)
        throw std::invalid_argument("unit_inverse_mod: not a unit");
    return inv.get_si();
}

/* Box product.  Underlying level is the tensor product with diagonal action.
 * Fixed level is presented by pure tensors of fixed generators together with
 * one orbit generator per pair of underlying generators, subject to the orbit
 * relations and the two Frobenius relations; res sends an orbit generator to
 * its norm and tr hits the orbit generators.
 */
inline CpMackey box(const CpMackey& m, const CpMackey& n) {
    if (m.p != n.p) throw std::invalid_argument("box: prime mismatch");
    int p = m.p;
    int am = m.fixed.gens, an = n.fixed.gens;
    int bm = m.underlying.gens, bn = n.underlying.gens;
    int pure = am * an, orb = bm * bn;
    IntMatrix iam = IntMatrix::identity(am), ian = IntMatrix::identity(an);
    IntMatrix ibm = IntMatrix::identity(bm), ibn = IntMatrix::identity(bn);
    IntMatrix iorb = IntMatrix::identity(orb);

    IntMatrix u_rels = kronecker(m.underlying.rels, ibn).hstack(kronecker(ibm, n.underlying.rels));
    FgAbGroup under{orb, u_rels};
    IntMatrix weyl = kronecker(m.weyl, n.weyl);
    IntMatrix norm(orb, orb);
    IntMatrix pw = iorb;
    for (int c = 0; c < p; c++) {
        norm = norm.add(pw);
        pw = weyl.mul(pw);
    }

    IntMatrix pure_rels = kronecker(m.fixed.rels, ian).hstack(kronecker(iam, n.fixed.rels));
    IntMatrix frob_left_pure = kronecker(iam, n.tr);    // f (x) tr(v)
    IntMatrix frob_left_orb = kronecker(m.res, ibn);    // orb(res f (x) v)
    IntMatrix frob_right_pure = kronecker(m.tr, ian);   // tr(u) (x) g
    IntMatrix frob_right_orb = kronecker(ibm, n.res);   // orb(u (x) res g)

    IntMatrix top = pure_rels.hstack(IntMatrix(pure, orb + u_rels.cols))
                        .hstack(frob_left_pure)
                        .hstack(frob_right_pure);
    IntMatrix bottom = IntMatrix(orb, pure_rels.cols)
                           .hstack(weyl.sub(iorb))
                           .hstack(u_rels)
                           .hstack(frob_left_orb.scaled(-1))
                           .hstack(frob_right_orb.scaled(-1));
    FgAbGroup fixed{pure + orb, top.vstack(bottom)};

    IntMatrix res = kronecker(m.res, n.res).hstack(norm);
    IntMatrix tr = IntMatrix(pure, orb).vstack(iorb);

    CpMackey out{p, fixed, under, res, tr, weyl};
    validate_mackey(out);
    return out;
}

inline MackeyHom box_hom(const MackeyHom& f, const MackeyHom& g) {
    IntMatrix under = kronecker(f.on_under, g.on_under);
    MackeyHom h{box(f.src, g.src), box(f.dst, g.dst),
                block_diag(kronecker(f.on_fixed, g.on_fixed), under), under};
    mackey_hom_check(h, "box product of maps");
    return h;
}

/* box with the twisted Burnside functor, in minimal presentation */
inline CpMackey twist(const CpMackey& m, long a) {
    return simplify_presentation(box(burnside_twisted(m.p, a), m)).value;
}

}  // namespace cpslice
