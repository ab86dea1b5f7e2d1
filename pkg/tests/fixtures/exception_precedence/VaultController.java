package com.demo.vault;

import org.springframework.http.HttpStatus;
import org.springframework.web.bind.annotation.ExceptionHandler;
import org.springframework.web.bind.annotation.GetMapping;
import org.springframework.web.bind.annotation.ResponseStatus;
import org.springframework.web.bind.annotation.RestController;

@RestController
public class VaultController {

    @GetMapping("/vault")
    public String open() throws VaultLockedException, AccessDeniedException {
        return "open";
    }

    @ExceptionHandler(VaultLockedException.class)
    @ResponseStatus(HttpStatus.NOT_FOUND)
    public void lockedLocally() {
    }
}
