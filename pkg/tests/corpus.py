"""Fixed graph corpora shared by tests."""

from twospin.graphs import (complete_bipartite_graph, complete_graph,
                            cycle_graph, grid_graph, hypercube_graph, path_graph,
                            petersen_graph, prism_graph, scaled_graph, single_edge,
                            star_graph)


def independent_set_corpus():
    """30 graphs, at most 15 vertices each."""
    graphs = []
    graphs += [path_graph(n) for n in range(2, 8)]            # 6
    graphs += [cycle_graph(n) for n in range(3, 9)]           # 6
    graphs += [complete_graph(n) for n in range(2, 7)]        # 5
    graphs += [star_graph(n) for n in (3, 4, 5)]              # 3
    graphs += [grid_graph(2, 3), grid_graph(2, 4), grid_graph(3, 3),
               grid_graph(3, 4), grid_graph(3, 5)]            # 5
    graphs += [petersen_graph(), hypercube_graph(3),
               complete_bipartite_graph(3, 3),
               complete_bipartite_graph(2, 3), prism_graph()]  # 5
    assert len(graphs) == 30
    assert all(g.num_vertices <= 15 for g in graphs)
    return graphs


def regular_corpus():
    """Regular graphs (some with parallel edges), at most 14 vertices."""
    graphs = [
        single_edge(),                      # 1-regular
        cycle_graph(3), cycle_graph(4), cycle_graph(5), cycle_graph(6),
        cycle_graph(8),                     # 2-regular
        complete_graph(4), complete_graph(5), complete_graph(6),
        complete_bipartite_graph(3, 3), complete_bipartite_graph(4, 4),
        complete_bipartite_graph(5, 5), complete_bipartite_graph(7, 7),
        petersen_graph(), hypercube_graph(3), prism_graph(),
        scaled_graph(cycle_graph(4), 2),    # 4-regular via multiplicities
        scaled_graph(single_edge(), 3),     # 3-regular two-vertex multigraph
    ]
    assert all(g.is_regular() and g.num_vertices <= 14 for g in graphs)
    return graphs
