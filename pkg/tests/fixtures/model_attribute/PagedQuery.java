package com.demo.search;

public class PagedQuery {
    private int page;
    private int size;
}
