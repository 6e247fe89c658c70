# a and b alternate; {a} and {b} form a 2-cycle.
background: a b
a / b -> b
b / a -> a
