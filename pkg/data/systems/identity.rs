# Every entity sustains itself; res is the identity.
background: a b c
a / . -> a
b / . -> b
c / . -> c
