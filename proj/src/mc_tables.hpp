#pragma once

// Classic marching cubes lookup tables (Lorensen/Cline case tables in the
// widely used 256-entry form). Corner and edge numbering:
//
//   corners: 0:(0,0,0) 1:(1,0,0) 2:(1,1,0) 3:(0,1,0)
//            4:(0,0,1) 5:(1,0,1) 6:(1,1,1) 7:(0,1,1)
//   edges:   0:0-1 1:1-2 2:2-3 3:3-0 4:4-5 5:5-6 6:6-7 7:7-4
//            8:0-4 9:1-5 10:2-6 11:3-7
//
// Bit i of the cube index is set when corner i is below the iso value.

namespace hullbench::mc {

extern const int kEdgeTable[256];
extern const int kTriTable[256][16];

}  // namespace hullbench::mc
