# Two-input NAND gate.
background: 0_a 1_a 0_b 1_b 0_out 1_out
0_a 0_b / . -> 1_out
0_a 1_b / . -> 1_out
1_a 0_b / . -> 1_out
1_a 1_b / . -> 0_out
