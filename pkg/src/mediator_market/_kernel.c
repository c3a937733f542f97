/* Native cons cells and the walkers the list module needs on its hot path.
 *
 * Nil is None; a cell is an immutable Cell(head, tail) that indexes like the
 * pair (head, tail). Cells are not tracked by the cycle collector: a chain is
 * built tail-first and can never point back at itself. Deallocation is
 * iterative so dropping a long chain does not recurse.
 */
#define PY_SSIZE_T_CLEAN
#include <Python.h>

typedef struct {
    PyObject_HEAD
    PyObject *head;
    PyObject *tail;
} Cell;

static PyTypeObject CellType;

#define Cell_Check(op) Py_IS_TYPE(op, &CellType)

static PyObject *
cell_make(PyObject *head, PyObject *tail)
{
    Cell *c = PyObject_New(Cell, &CellType);
    if (c == NULL)
        return NULL;
    Py_INCREF(head);
    Py_INCREF(tail);
    c->head = head;
    c->tail = tail;
    return (PyObject *)c;
}

static void
cell_dealloc(Cell *c)
{
    for (;;) {
        PyObject *tail = c->tail;
        Py_DECREF(c->head);
        PyObject_Free(c);
        if (!Cell_Check(tail) || Py_REFCNT(tail) > 1) {
            Py_DECREF(tail);
            return;
        }
        /* sole owner of the next cell: free it here instead of recursing */
        c = (Cell *)tail;
    }
}

static PyObject *
cell_new(PyTypeObject *type, PyObject *args, PyObject *kwds)
{
    PyObject *head, *tail;
    if (kwds != NULL && PyDict_GET_SIZE(kwds) != 0) {
        PyErr_SetString(PyExc_TypeError, "Cell takes no keyword arguments");
        return NULL;
    }
    if (!PyArg_UnpackTuple(args, "Cell", 2, 2, &head, &tail))
        return NULL;
    if (tail != Py_None && !Cell_Check(tail)) {
        PyErr_SetString(PyExc_TypeError, "Cell tail must be a Cell or None");
        return NULL;
    }
    return cell_make(head, tail);
}

static Py_ssize_t
cell_len(PyObject *self)
{
    return 2;
}

static PyObject *
cell_item(Cell *c, Py_ssize_t i)
{
    PyObject *r;
    if (i == 0)
        r = c->head;
    else if (i == 1)
        r = c->tail;
    else {
        PyErr_SetString(PyExc_IndexError, "Cell index out of range");
        return NULL;
    }
    Py_INCREF(r);
    return r;
}

static PySequenceMethods cell_as_sequence = {
    .sq_length = cell_len,
    .sq_item = (ssizeargfunc)cell_item,
};

static PyObject *
cell_repr(Cell *c)
{
    return PyUnicode_FromFormat("Cell(%R, ...)", c->head);
}

static PyTypeObject CellType = {
    PyVarObject_HEAD_INIT(NULL, 0)
    .tp_name = "mediator_market._kernel.Cell",
    .tp_basicsize = sizeof(Cell),
    .tp_dealloc = (destructor)cell_dealloc,
    .tp_repr = (reprfunc)cell_repr,
    .tp_as_sequence = &cell_as_sequence,
    .tp_flags = Py_TPFLAGS_DEFAULT,
    .tp_doc = "Immutable cons cell (head, tail).",
    .tp_new = cell_new,
};

static int
check_cell(PyObject *cell)
{
    if (cell == Py_None)
        return 0;
    if (!Cell_Check(cell)) {
        PyErr_SetString(PyExc_TypeError, "malformed cons chain");
        return -1;
    }
    return 1;
}

#define HEAD(c) (((Cell *)(c))->head)
#define TAIL(c) (((Cell *)(c))->tail)

static PyObject *
kernel_length(PyObject *self, PyObject *cell)
{
    unsigned long long n = 0;
    int r;
    while ((r = check_cell(cell)) == 1) {
        n++;
        cell = TAIL(cell);
    }
    if (r < 0)
        return NULL;
    return PyLong_FromUnsignedLongLong(n);
}

/* Reads a non-negative index; sets *out_of_range when it cannot fit. */
static int
read_index(PyObject *obj, unsigned long long *index, int *out_of_range)
{
    *out_of_range = 0;
    if (!PyLong_Check(obj)) {
        PyErr_SetString(PyExc_TypeError, "index must be an int");
        return -1;
    }
    if (_PyLong_Sign(obj) < 0) {
        PyErr_SetString(PyExc_ValueError, "index must be non-negative");
        return -1;
    }
    *index = PyLong_AsUnsignedLongLong(obj);
    if (*index == (unsigned long long)-1 && PyErr_Occurred()) {
        if (!PyErr_ExceptionMatches(PyExc_OverflowError))
            return -1;
        PyErr_Clear();
        *out_of_range = 1;
    }
    return 0;
}

/* Rebuilds the first n cells of first in front of rest. Steals rest. */
static PyObject *
rebuild_prefix(PyObject *first, unsigned long long n, PyObject *rest)
{
    if (n == 0)
        return rest;
    PyObject **heads = PyMem_Malloc(sizeof(PyObject *) * (size_t)n);
    if (heads == NULL) {
        Py_DECREF(rest);
        return PyErr_NoMemory();
    }
    PyObject *cell = first;
    for (unsigned long long i = 0; i < n; i++) {
        heads[i] = HEAD(cell);
        cell = TAIL(cell);
    }
    for (unsigned long long i = n; i-- > 0;) {
        PyObject *next = cell_make(heads[i], rest);
        Py_DECREF(rest);
        if (next == NULL) {
            PyMem_Free(heads);
            return NULL;
        }
        rest = next;
    }
    PyMem_Free(heads);
    return rest;
}

/* nth(cell, index, default) */
static PyObject *
kernel_nth(PyObject *self, PyObject *const *args, Py_ssize_t nargs)
{
    unsigned long long index;
    int oor, r;
    if (nargs != 3) {
        PyErr_SetString(PyExc_TypeError, "nth expects 3 arguments");
        return NULL;
    }
    if (read_index(args[1], &index, &oor) < 0)
        return NULL;
    PyObject *cell = args[0];
    while ((r = check_cell(cell)) == 1) {
        if (index == 0 && !oor) {
            Py_INCREF(HEAD(cell));
            return HEAD(cell);
        }
        index--;
        cell = TAIL(cell);
    }
    if (r < 0)
        return NULL;
    Py_INCREF(args[2]);
    return args[2];
}

/* set(cell, index, element): rebuild the prefix, share the suffix. */
static PyObject *
kernel_set(PyObject *self, PyObject *const *args, Py_ssize_t nargs)
{
    unsigned long long index, k;
    int oor, r;
    if (nargs != 3) {
        PyErr_SetString(PyExc_TypeError, "set expects 3 arguments");
        return NULL;
    }
    PyObject *first = args[0];
    if (read_index(args[1], &index, &oor) < 0)
        return NULL;
    if (check_cell(first) < 0)
        return NULL;
    if (oor) {
        Py_INCREF(first);
        return first;
    }
    PyObject *cell = first;
    k = index;
    while ((r = check_cell(cell)) == 1 && k > 0) {
        k--;
        cell = TAIL(cell);
    }
    if (r < 0)
        return NULL;
    if (r == 0) {
        /* out of range: structurally the input */
        Py_INCREF(first);
        return first;
    }
    PyObject *rest = cell_make(args[2], TAIL(cell));
    if (rest == NULL)
        return NULL;
    return rebuild_prefix(first, index, rest);
}

/* append(cell, element): copy every cell, then end with element. */
static PyObject *
kernel_append(PyObject *self, PyObject *const *args, Py_ssize_t nargs)
{
    unsigned long long n = 0;
    int r;
    if (nargs != 2) {
        PyErr_SetString(PyExc_TypeError, "append expects 2 arguments");
        return NULL;
    }
    PyObject *cell = args[0];
    while ((r = check_cell(cell)) == 1) {
        n++;
        cell = TAIL(cell);
    }
    if (r < 0)
        return NULL;
    PyObject *rest = cell_make(args[1], Py_None);
    if (rest == NULL)
        return NULL;
    return rebuild_prefix(args[0], n, rest);
}

static PyMethodDef kernel_methods[] = {
    {"length", (PyCFunction)kernel_length, METH_O, "Count the cells of a chain."},
    {"nth", (PyCFunction)(void (*)(void))kernel_nth, METH_FASTCALL,
     "Head at a zero-based index, or default when out of range."},
    {"set", (PyCFunction)(void (*)(void))kernel_set, METH_FASTCALL,
     "Chain with the head at index replaced; the input itself when out of range."},
    {"append", (PyCFunction)(void (*)(void))kernel_append, METH_FASTCALL,
     "Copy of a chain with one more cell at the end."},
    {NULL, NULL, 0, NULL}
};

static struct PyModuleDef kernel_module = {
    PyModuleDef_HEAD_INIT, "_kernel", NULL, -1, kernel_methods
};

PyMODINIT_FUNC
PyInit__kernel(void)
{
    if (PyType_Ready(&CellType) < 0)
        return NULL;
    PyObject *m = PyModule_Create(&kernel_module);
    if (m == NULL)
        return NULL;
    Py_INCREF(&CellType);
    if (PyModule_AddObject(m, "Cell", (PyObject *)&CellType) < 0) {
        Py_DECREF(&CellType);
        Py_DECREF(m);
        return NULL;
    }
    return m;
}
