"""Exact triangle counting with vertex-centric hashing.

The counting kernel ships as a compiled extension (``hashtc._kernels``) with a
pure-Python twin (``hashtc._pykernels``); the first one that imports is used.
"""

from ._backend import available as available_backends, get_backend
from .counting import count_edge_centric, count_vertex_centric
from .graph_io import (CsrGraph, EdgeList, GraphFormatError, build_csr, load_edge_list,
                       load_graph, normalize)
from .hashing import (CapacityExhausted, CountReport, HashTable, SchedulerConfig,
                      build_table, estimate_cost, probe, virtual_index)
from .oracle import count_merge_path, count_naive
from .orientation import (OrientedGraph, Permutation, apply_permutation,
                          orient_rank_by_degree, reorder_by_collective_outdegree,
                          reorder_by_degree, reorder_by_indegree, reorder_three_subsets)
from .partition import (PartitionGrid, Subtask, classify_after_partition, count_partitioned,
                        count_subtask, enumerate_subtasks, partition_graph)

__version__ = "0.1.0"
