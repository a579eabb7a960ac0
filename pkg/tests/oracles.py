"""Plain-loop reference computations that share no code with the package."""
import itertools


def tuples_limit(sets, arrows):
    """Families (one element per object) compatible with every arrow.

    ``sets``: object -> list of elements; ``arrows``: list of (source object,
    target object, table) with the table going from the set at source to the
    set at target.
    """
    objs = sorted(sets)
    out = set()
    for combo in itertools.product(*(sets[o] for o in objs)):
        fam = dict(zip(objs, combo))
        if all(table[fam[s]] == fam[t] for s, t, table in arrows):
            out.add(tuple(sorted(fam.items())))
    return out


def components_colimit(sets, arrows):
    """Connected components of the graph on tagged elements (BFS, no union-find)."""
    nodes = [(o, e) for o in sorted(sets) for e in sets[o]]
    adj = {n: set() for n in nodes}
    for s, t, table in arrows:
        for a, b in table.items():
            adj[(s, a)].add((t, b))
            adj[(t, b)].add((s, a))
    seen, comps = set(), []
    for n in nodes:
        if n in seen:
            continue
        comp, frontier = {n}, [n]
        seen.add(n)
        while frontier:
            cur = frontier.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    frontier.append(nb)
        comps.append(frozenset(comp))
    return comps


def all_functions(xs, ys):
    return [dict(zip(xs, vals)) for vals in itertools.product(ys, repeat=len(xs))]


def nat_count(cat_objects, arrows, f_sets, f_act, g_sets, g_act):
    """Count natural transformations F => G by enumerating every family of functions.

    ``arrows``: list of (arrow id, a, b) meaning the action goes from the set at
    ``a`` to the set at ``b`` for both functors.
    """
    comps = [all_functions(list(f_sets[x]), list(g_sets[x])) for x in cat_objects]
    count = 0
    for choice in itertools.product(*comps):
        theta = dict(zip(cat_objects, choice))
        if all(theta[b][f_act[m][e]] == g_act[m][theta[a][e]]
               for m, a, b in arrows for e in f_sets[a]):
            count += 1
    return count


def raw_arrows(diagram):
    """(source, target, table) triples for every non-identity arrow of a SetDiagram."""
    out = []
    for m in diagram.shape.non_identities():
        s, t = diagram.arrow(m)
        out.append((s, t, dict(diagram.morphisms[m].table)))
    return out


def raw_sets(diagram):
    return {j: list(s.elements) for j, s in diagram.objects.items()}
