//! The non-ground modules, one rule per line, in the DLV-style syntax that
//! is also the neutral form the clingo rendering starts from.

pub const DOMAIN: &str = "\
prog_rule(P,R) :- phead(P,R,A).
dom(A) :- phead(P,R,A).
prog_rule(P,R) :- pbody(P,R,A).
dom(A) :- pbody(P,R,A).
prog_rule(P,R) :- nhead(P,R,A).
dom(A) :- nhead(P,R,A).
prog_rule(P,R) :- nbody(P,R,A).
dom(A) :- nbody(P,R,A).
prog(P) :- prog_rule(P,R).
model(c).
model(t).
model(h).
prog_model(c).
prog_model(t).
";

pub const MODELS: &str = "\
in(P,A,M) :- not out(P,A,M), prog(P), dom(A), model(M).
out(P,A,M) :- not in(P,A,M), prog(P), dom(A), model(M).
:- in(P,A,h), out(P,A,t).
diff(P,Q,A,M) :- in(P,A,M), out(Q,A,M).
diff(P,Q,A,M) :- out(P,A,M), in(Q,A,M).
same(P,Q,A,M) :- in(P,A,M), in(Q,A,M).
same(P,Q,A,M) :- out(P,A,M), out(Q,A,M).
ok(P,R,M) :- in(P,A,M), phead(P,R,A), model(M).
ok(P,R,M) :- out(P,A,M), pbody(P,R,A), model(M).
ok(P,R,M) :- in(P,A,M), nbody(P,R,A), prog_model(M).
ok(P,R,M) :- out(P,A,M), nhead(P,R,A), prog_model(M).
ok(P,R,h) :- in(P,A,t), nbody(P,R,A).
ok(P,R,h) :- out(P,A,t), nhead(P,R,A).
:- not ok(P,R,M), prog_rule(P,R), model(M).
";

pub const ORDER: &str = "\
lt(X,Y) :- dom(X), dom(Y), X < Y.
nsucc(X,Z) :- lt(X,Y), lt(Y,Z).
succ(X,Y) :- lt(X,Y), not nsucc(X,Y).
ninf(X) :- lt(Y,X).
nsup(X) :- lt(X,Y).
inf(X) :- not ninf(X), dom(X).
sup(X) :- not nsup(X), dom(X).
minprog(P) :- prog(P), P = Q + 1, not prog(Q).
maxprog(P) :- prog(P), Q = P + 1, not prog(Q).
";

pub const CARD: &str = "\
:~ diff(1,2,A,c).
:~ diff(1,2,A,t).
:~ diff(1,2,A,t), dom(B).
:~ diff(1,2,A,h).
selector(2).
";

pub const RESULT: &str = "\
total :- not nontotal.
nontotal :- not total.
:- nontotal, selector(S), in(S,A,t), out(S,A,c).
:- nontotal, selector(S), out(S,A,t), in(S,A,c).
resultH(A) :- selector(S), in(S,A,h), nontotal.
resultH(A) :- selector(S), in(S,A,c), total.
resultT(A) :- selector(S), in(S,A,c).
";

pub const WITNESS: &str = "\
win(P,A,M) ; wout(P,A,M) :- prog(P), dom(A), model(M).
wdiff(P,Q,A,M) :- win(P,A,M), wout(Q,A,M).
wdiff(P,Q,A,M) :- wout(P,A,M), win(Q,A,M).
wsame(P,Q,A,M) :- win(P,A,M), win(Q,A,M).
wsame(P,Q,A,M) :- wout(P,A,M), wout(Q,A,M).
notsubsetq(M,P,Q) :- same(P,Q,A,M), wdiff(P,Q,A,M).
win(P,A,M) :- spoil, prog(P), dom(A), model(M).
wout(P,A,M) :- spoil, prog(P), dom(A), model(M).
:- not spoil.
";

pub const INCL: &str = "\
spoil :- win(P,A,h), wout(P,A,t).
spoil :- violated(P,R,M).
spoilcond(M) :- notsubsetq(M,1,2), prog_model(M).
spoilcond(c) :- samediff_all(c).
spoilcond(t) :- notsubsetq(h,1,2), samediff_all(t).
spoilcond(t) :- samediff_all(h), samediff_all(t).
spoil :- spoilcond(c), spoilcond(t).
selector(2).
";

pub const VIOLATION: &str = "\
unsat(P,R,A,M) :- win(P,A,M), not phead(P,R,A), not nbody(P,R,A), prog_rule(P,R), model(M).
unsat(P,R,A,M) :- wout(P,A,M), not pbody(P,R,A), not nhead(P,R,A), prog_rule(P,R), prog_model(M).
unsat(P,R,A,h) :- wout(P,A,h), win(P,A,t), not pbody(P,R,A), not nbody(P,R,A), prog_rule(P,R).
unsat(P,R,A,h) :- wout(P,A,h), wout(P,A,t), not pbody(P,R,A), not nhead(P,R,A), prog_rule(P,R).
violupto(P,R,A,M) :- inf(A), unsat(P,R,A,M).
violupto(P,R,A,M) :- succ(B,A), violupto(P,R,B,M), unsat(P,R,A,M).
violated(P,R,M) :- sup(A), violupto(P,R,A,M).
";

pub const EQ: &str = "\
samediff_atom(I,J,A,M) :- same(I,J,A,M), wsame(I,J,A,M).
samediff_atom(I,J,A,M) :- diff(I,J,A,M), wdiff(I,J,A,M).
samediff_upto_atom(I,J,A,M) :- inf(A), samediff_atom(I,J,A,M).
samediff_upto_atom(I,J,A,M) :- succ(B,A), samediff_atom(I,J,A,M), samediff_upto_atom(I,J,B,M).
samediff(I,J,M) :- sup(A), samediff_upto_atom(I,J,A,M).
samediff_upto_prog(I,M) :- minprog(I), model(M).
samediff_upto_prog(I,M) :- I = J + 1, samediff(I,J,M), samediff_upto_prog(J,M).
samediff_all(M) :- samediff_upto_prog(I,M), maxprog(I).
";

pub const BASIC: &str = "\
spoil :- win(P,A,h), wout(P,A,t).
spoil :- violated(P,R,M).
spoilcond(M) :- notsubsetq(M,0,J), prog_model(M).
spoilcond(c) :- samediff_all(c).
spoilcond(t) :- notsubsetq(h,0,J), samediff_all(t).
spoilcond(t) :- samediff_all(h), samediff_all(t).
spoil :- spoilcond(c), spoilcond(t).
selector(0).
prog(0).
";

pub const ARBITRATION: &str = "\
spoil :- win(P,A,h), wout(P,A,t).
spoil :- violated(P,R,M).
spoilcond(M) :- notsubsetq(M,I,J), prog_model(M).
spoilcond(c) :- samediff_all(c).
spoilcond(t) :- notsubsetq(h,I,J), samediff_all(t).
spoilcond(t) :- samediff_all(h), samediff_all(t).
spoil :- spoilcond(c), spoilcond(t).
win(P,A,M) :- spoil, prog(P), dom(A), model(M).
wout(P,A,M) :- spoil, prog(P), dom(A), model(M).
:- not spoil.
";

pub const RESULT_ARBITRATION: &str = "\
tout(I) ; tout(J) :- prog(I), prog(J), I != J.
tselect(I) :- not tout(I), prog(I).
total :- not nontotal.
nontotal :- not total.
resultT(A) :- in(M,A,c), tselect(M).
resultH(A) :- in(M,A,c), total, tselect(M).
hout(I) ; hout(J) :- prog(I), prog(J), I != J, nontotal.
hselect(I) :- not hout(I), prog(I), nontotal.
:- nontotal, in(I,A,t), out(J,A,c), tselect(J), hselect(I), nontotal.
:- nontotal, out(I,A,t), in(J,A,c), tselect(J), hselect(I), nontotal.
resultH(A) :- in(I,A,h), hselect(I), nontotal.
";
