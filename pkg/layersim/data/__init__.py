from layersim.data.components import connected_components as connected_components
from layersim.data.components import gmcc as gmcc
from layersim.data.components import mutual_components as mutual_components
from layersim.data.io import load_multiplex as load_multiplex
from layersim.data.io import save_multiplex as save_multiplex
from layersim.data.io import save_nodes as save_nodes
from layersim.data.multiplex import LayerGraph as LayerGraph
from layersim.data.multiplex import MultiplexNetwork as MultiplexNetwork
from layersim.data.multiplex import NodeSet as NodeSet
